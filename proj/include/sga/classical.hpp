#pragma once

#include "sga/verify.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace sga::classical {

using Vec4 = std::array<double, 4>;

/// Point of phase space on the constraint surface x.x = 1, x.p = 0.
struct PhaseState {
  Vec4 x{};
  Vec4 p{};
};

/// max(|x.x - 1|, |x.p|).
double constraint_residual(const PhaseState &s);

/// x -> x/|x|, p -> p - (x.p) x. Throws std::invalid_argument for x = 0.
PhaseState project(const PhaseState &s);

struct ClassicalGenerators {
  std::array<std::array<double, 4>, 4> J{}; // x_i p_j - x_j p_i
  Vec4 K{};                                 // M_i5 = J_ik x_k
  Vec4 L{};                                 // M_i6 = sqrt(H) x_i
  double h = 0.0;                           // M_56 = sqrt(H)
  double H = 0.0;                           // (1/2) J_ij J_ij = p^2

  /// M_ab for 1 <= a, b <= 6 (antisymmetric).
  double M(int a, int b) const;
  /// A+-_j = M_5j -+ i M_6j.
  std::complex<double> Aplus(int j) const;
  std::complex<double> Aminus(int j) const;
};

ClassicalGenerators classical_generators(const PhaseState &s);

/// Unconstrained ambient coordinates (xi, pi) with xi != 0.
struct AmbientState {
  Vec4 xi{};
  Vec4 pi{};
};

/// x = xi/|xi|, p = |xi| pi - (pi.xi) xi/|xi|. Throws for xi = 0.
PhaseState ambient_map(const AmbientState &a);

enum class BracketKind { XX, PX, PP };

/// Dirac bracket {x_i,x_j}, {p_i,x_j} or {p_i,p_j}; i, j in 1..4.
double dirac_bracket_basis(const PhaseState &s, BracketKind kind, int i, int j);

using Observable = std::function<double(const PhaseState &)>;

/// Canonical bracket in (xi, pi) of f and g pulled back through ambient_map,
/// sum_k df/dpi_k dg/dxi_k - dg/dpi_k df/dxi_k, by central differences.
double poisson_oracle(const Observable &f, const Observable &g, const AmbientState &a,
                      double step = 1e-5);

/// Random ambient state with |xi| of order one.
AmbientState random_ambient(std::mt19937_64 &rng);

/// Dirac brackets against the oracle at `count` random states, plus the
/// so(4) action {J_ik, x_l} and bracket antisymmetry.
std::vector<verify::CheckResult> check_bracket_oracle(std::uint64_t seed = 1, int count = 20,
                                                      double step = 1e-5,
                                                      double tolerance = 1e-6);

/// Restrictive tensors T_ab (c = 0), R^ab and M^ab M_ab of a state; the
/// largest absolute entry.
double restrictive_residual(const ClassicalGenerators &g);
double casimir_value(const ClassicalGenerators &g);

/// Angular frequency 2 sqrt(H) and period pi/sqrt(H) of a state.
double omega(const PhaseState &s);
double period(const PhaseState &s);

/// Closed-form great-circle motion. For H = 0 the state is returned unchanged.
PhaseState analytic_solution(const PhaseState &s0, double t);

enum class Method { Analytic, Rk4 };

struct Trajectory {
  std::vector<double> times;
  std::vector<PhaseState> states;
  Method method = Method::Analytic;
  bool degenerate = false;
};

std::string method_name(Method m);

/// Analytic samples at t = k dt, k = 0..steps with steps = round(t_end/dt).
Trajectory sample_analytic(const PhaseState &s0, double t_end, double dt);

/// Fixed-step RK4 on xdot = 2p, pdot = -2 p^2 x with projection after each
/// step. The step is shrunk so that it divides t_end. Throws
/// std::invalid_argument for dt <= 0 or dt >= period/10. H = 0 gives a
/// constant, degenerate trajectory.
Trajectory integrate(const PhaseState &s0, double t_end, double dt);

struct MotionTolerances {
  double constants = 1e-10; // A+- phase-corrected, A+.A- = 2H, Casimir, tensors
  double drift = 1e-10;     // H and J_ij along the trajectory
  double velocity = 1e-8;   // p = xdot/2 by a five-point stencil
  double constraint = 1e-12;

  static MotionTolerances for_method(Method m);
};

std::vector<verify::CheckResult> check_motion_constants(const Trajectory &traj,
                                                        const MotionTolerances &tol);
std::vector<verify::CheckResult> check_motion_constants(const Trajectory &traj);

/// Largest |state - analytic| over the trajectory samples.
double max_deviation_from_analytic(const Trajectory &traj);

/// Period from the zeros of x(t).x(0), located by cubic Hermite
/// interpolation between samples. NaN if fewer than two zeros are found.
double measure_period(const Trajectory &traj);

} // namespace sga::classical
