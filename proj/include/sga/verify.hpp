#pragma once

#include "sga/hilbert.hpp"
#include "sga/operators.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sga::verify {

using Matrix = Eigen::MatrixXcd;

/// One numerical identity check. pass is residual <= tolerance.
struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  /// Inclusive level range of the columns compared; empty for scalar checks.
  std::optional<std::pair<int, int>> levels;
  /// Wall-clock seconds of the check group, only when timings are enabled.
  std::optional<double> seconds;
  /// Free-form status, e.g. "degenerate" for skipped classical checks.
  std::string note;
};

CheckResult make_result(std::string name, double residual, double tolerance,
                        std::optional<std::pair<int, int>> levels = std::nullopt);

struct VerificationReport {
  int max_level = 0;
  Eigen::Index dimension = 0;
  double c = 2.0;
  std::vector<CheckResult> checks;

  bool pass() const;
  std::size_t failures() const;
};

struct VerifyOptions {
  /// Shift constant in T~_ab = T_ab + c g_ab.
  double c = 2.0;
  /// Identities quadratic (or cubic) in the generators.
  double tolerance = 1e-10;
  /// Identities routed through f(h).
  double chain_tolerance = 1e-8;
  /// Scalar recursion f(h) f(h+1) = 2h + 1, relative.
  double f_tolerance = 1e-12;
  double spectrum_tolerance = 1e-10;
  int f_max = 20;
  bool timings = false;
};

/// ||LHS - RHS||_F / max(1, ||LHS||_F, ||RHS||_F) over the first `cols`
/// columns (all rows).
double relative_residual(const Matrix &lhs, const Matrix &rhs, Eigen::Index cols);

/// Highest level at which products of `factors` level-shifting operators
/// are unaffected by truncation: max(N - factors, 0).
int interior_level(int max_level, int factors);

std::vector<CheckResult> check_commutators(const operators::Representation &rep,
                                           const VerifyOptions &opts = {});
std::vector<CheckResult> check_restrictive(const operators::Representation &rep,
                                           const VerifyOptions &opts = {});
std::vector<CheckResult> check_casimirs(const operators::Representation &rep,
                                        const VerifyOptions &opts = {});

/// Spectrum of H against n(n+2) with multiplicity (n+1)^2.
CheckResult check_spectrum(const operators::Representation &rep, const VerifyOptions &opts = {});

/// su(2)+su(2) Casimirs M^2 = N^2 = j(j+1), j = n/2, on every level.
std::vector<CheckResult> check_su2(const operators::Representation &rep,
                                   const VerifyOptions &opts = {});

struct SpectrumRow {
  int level = 0;
  double exact = 0.0;
  int degeneracy = 0;
  int measured_multiplicity = 0;
  /// Mean of the eigenvalues matched to this level.
  double measured = 0.0;
  /// Largest |eigenvalue - exact| among those matched.
  double residual = 0.0;
};

/// Eigenvalues of H matched by nearest integer root of lambda = n(n+2).
std::vector<SpectrumRow> spectrum_table(const operators::Representation &rep);

/// Scalar recursion on h = 1..h_max.
CheckResult check_f_recursion(int h_max, double tolerance = 1e-12);

/// Matrix identities involving f(h): L from J and X, and P from L.
std::vector<CheckResult> check_f_identities(const operators::Representation &rep,
                                            const VerifyOptions &opts = {});

/// Position and momentum operator relations.
std::vector<CheckResult> check_position_momentum(const operators::Representation &rep,
                                                 const VerifyOptions &opts = {});

/// Ladder operator structure: ground state, nilpotency, sum rules, adjoints.
std::vector<CheckResult> check_ladder(const operators::Representation &rep,
                                      const VerifyOptions &opts = {});

/// Eigen-operators V+-, their algebra, and their relation to A+-.
std::vector<CheckResult> check_eigenoperators(const operators::Representation &rep,
                                              const VerifyOptions &opts = {});

/// Coordinates of A+_{mu1} ... A+_{mun} psi_0. Indices are 1..4.
Eigen::VectorXcd eigenstate_vector(const operators::Representation &rep,
                                   const std::vector<int> &indices);

/// Harmonic polynomial of A+_{mu1} ... A+_{mun} psi_0.
/// Throws std::out_of_range for an index outside 1..4 or n > N - 1.
hilbert::Polynomial4 build_eigenstate(const operators::Representation &rep,
                                      const std::vector<int> &indices);

/// Harmonicity, level, symmetry, tracelessness and span of the eigenstates
/// for every n <= N - 1.
std::vector<CheckResult> check_eigenstates(const operators::Representation &rep,
                                           const VerifyOptions &opts = {});

/// Spin matrices S_x, S_y, S_z for spin s (2s integer).
std::array<Matrix, 3> spin_matrices(int two_s);

/// S_i S_j + S_j S_i - (1/2) delta_ij for the given spin matrices.
std::array<std::array<Matrix, 3>, 3> so3_restrictive(const std::array<Matrix, 3> &s);

/// Spin-1/2 satisfies the quadratic restriction; spin 1 does not; the
/// restriction tensor transforms covariantly.
std::vector<CheckResult> so3_demo();

/// Every check above on one representation.
VerificationReport run_suite(const operators::Representation &rep, const VerifyOptions &opts = {});

/// Builds the representation on levels 0..N and runs the suite.
VerificationReport run_suite(int max_level, const VerifyOptions &opts = {});

} // namespace sga::verify
