#pragma once

#include <Eigen/Dense>

#include <array>
#include <compare>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace sga::algebra {

/// Label of one so(4,2) generator M_ab, stored with 1 <= a < b <= 6.
///
/// The sub-blocks carry the usual names: J_ij = M_ij, K_i = M_i5,
/// L_i = M_i6 and h = M_56.
class GeneratorIndex {
public:
  /// Throws std::invalid_argument unless 1 <= a < b <= 6.
  GeneratorIndex(int a, int b);

  int a() const { return a_; }
  int b() const { return b_; }

  /// Position in 0..14, lexicographic in (a, b).
  int flat() const;
  static GeneratorIndex from_flat(int k);

  static const std::array<GeneratorIndex, 15> &all();

  std::string name() const;

  auto operator<=>(const GeneratorIndex &) const = default;

private:
  int a_;
  int b_;
};

/// Diagonal of the so(4,2) metric, signature (+,+,+,+,-,-). Indices 1..6.
constexpr int metric(int a) { return a <= 4 ? 1 : -1; }
constexpr int metric(int a, int b) { return a == b ? metric(a) : 0; }

/// Completely antisymmetric symbol with eps(1,2,3,4,5,6) = +1.
int levi_civita6(const std::array<int, 6> &idx);
/// eps_ijkl on 1..4 with eps(1,2,3,4) = +1.
int levi_civita4(int i, int j, int k, int l);

/// Exact Gaussian integer; structure constants live in Z[i].
struct Gaussian {
  std::int64_t re = 0;
  std::int64_t im = 0;

  Gaussian &operator+=(const Gaussian &o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  friend Gaussian operator+(Gaussian x, const Gaussian &y) { return x += y; }
  friend Gaussian operator*(const Gaussian &x, const Gaussian &y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
  }
  friend bool operator==(const Gaussian &, const Gaussian &) = default;
  bool is_zero() const { return re == 0 && im == 0; }
  std::complex<double> to_complex() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }
};

/// Bracket convention: quantum commutators carry an extra factor -i
/// relative to the classical Dirac brackets.
enum class BracketMode { Quantum, Classical };

/// Finite linear combination of generators plus an identity term.
struct LinearCombo {
  std::map<GeneratorIndex, Gaussian> terms;
  Gaussian scalar;

  /// Adds coeff * M_ab for arbitrary a, b in 1..6 (M_ba = -M_ab, M_aa = 0).
  void add(int a, int b, Gaussian coeff);
  void add(const LinearCombo &other, Gaussian factor = {1, 0});
  bool is_zero() const;
  /// Largest |re| + |im| among the coefficients.
  std::int64_t max_abs() const;
};

/// Right-hand side of [M_ab, M_cd] (quantum) or {M_ab, M_cd} (classical).
LinearCombo commutator_rhs(GeneratorIndex ab, GeneratorIndex cd,
                           BracketMode mode = BracketMode::Quantum);

/// Bracket of a linear combination with a single generator, extended
/// bilinearly through commutator_rhs. Identity terms drop out.
LinearCombo commutator_rhs(const LinearCombo &lhs, GeneratorIndex cd,
                           BracketMode mode = BracketMode::Quantum);

using Triple = std::array<GeneratorIndex, 3>;

/// All 455 unordered triples of distinct generators.
std::vector<Triple> all_triples();

/// Max coefficient of [[A,B],C] + [[B,C],A] + [[C,A],B] over the sample,
/// evaluated in exact integer arithmetic.
std::int64_t jacobi_residual(const std::vector<Triple> &sample,
                             BracketMode mode = BracketMode::Quantum);

using Matrix = Eigen::MatrixXcd;

/// Fifteen square matrices of a common size, one per generator.
class GeneratorSet {
public:
  /// Throws std::invalid_argument when the matrices are not all square of
  /// one size.
  explicit GeneratorSet(std::array<Matrix, 15> ops);

  Eigen::Index dim() const { return dim_; }

  const Matrix &operator[](GeneratorIndex g) const { return ops_[g.flat()]; }

  /// M_ab for any a, b in 1..6, honoring antisymmetry.
  Matrix M(int a, int b) const;

  // Named blocks. Indices are 1-based like the generator labels.
  Matrix J(int i, int j) const { return M(i, j); }
  const Matrix &K(int i) const { return ops_[GeneratorIndex(i, 5).flat()]; }
  const Matrix &L(int i) const { return ops_[GeneratorIndex(i, 6).flat()]; }
  const Matrix &h() const { return ops_[GeneratorIndex(5, 6).flat()]; }

  /// Evaluates a linear combination as a matrix.
  Matrix evaluate(const LinearCombo &combo) const;

private:
  std::array<Matrix, 15> ops_;
  Eigen::Index dim_ = 0;
};

/// 6x6 array of operator-valued components, indices 0..5 for labels 1..6.
using Tensor6 = std::array<std::array<Matrix, 6>, 6>;

/// T~_ab = (M_ad M_be + M_be M_ad) g^de + c g_ab, from the contraction.
Tensor6 tensor_T(const GeneratorSet &ops, double c);

/// R^ab = eps^abcdef (M_cd M_ef + M_ef M_cd), from the contraction.
Tensor6 tensor_R(const GeneratorSet &ops);

/// T~_ab assembled from the hand-expanded block formulas in J, K, L, h.
Tensor6 tensor_T_components(const GeneratorSet &ops, double c);

/// R^ab assembled from the hand-expanded block formulas in J, K, L, h.
///
/// With {A,B} = AB + BA and (k,l) running over 1..4:
///   R^ij = -4 eps_ijkl Q_kl
///   R^5i = 4 eps_ijkl {L_j, J_kl}
///   R^6i = -4 eps_ijkl {K_j, J_kl}
///   R^56 = 2 eps_ijkl J_ij J_kl
/// where Q_kl = {K_k,L_l} - {L_k,K_l} - {J_kl,h}, so R^ij is the dual of
/// the hand-expanded antisymmetric array Q.
Tensor6 tensor_R_components(const GeneratorSet &ops);

} // namespace sga::algebra
