#include "sga/classical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sga::classical {

namespace {

const std::complex<double> I{0.0, 1.0};

double dot(const Vec4 &a, const Vec4 &b) {
  double s = 0.0;
  for (int k = 0; k < 4; ++k)
    s += a[k] * b[k];
  return s;
}

double norm(const Vec4 &a) { return std::sqrt(dot(a, a)); }

Vec4 axpy(double a, const Vec4 &x, const Vec4 &y) {
  Vec4 out;
  for (int k = 0; k < 4; ++k)
    out[k] = a * x[k] + y[k];
  return out;
}

double state_distance(const PhaseState &a, const PhaseState &b) {
  double d = 0.0;
  for (int k = 0; k < 4; ++k)
    d = std::max({d, std::abs(a.x[k] - b.x[k]), std::abs(a.p[k] - b.p[k])});
  return d;
}

// The generators as 1x1 matrices, so the tensor code of the algebra module
// evaluates the classical restrictive relations too.
algebra::GeneratorSet as_generator_set(const ClassicalGenerators &g) {
  std::array<algebra::Matrix, 15> mats;
  for (const auto &idx : algebra::GeneratorIndex::all())
    mats[idx.flat()] = algebra::Matrix::Constant(1, 1, g.M(idx.a(), idx.b()));
  return algebra::GeneratorSet(std::move(mats));
}

void check_label(int i) {
  if (i < 1 || i > 4)
    throw std::out_of_range("vector index must be in 1..4");
}

} // namespace

double constraint_residual(const PhaseState &s) {
  return std::max(std::abs(dot(s.x, s.x) - 1.0), std::abs(dot(s.x, s.p)));
}

PhaseState project(const PhaseState &s) {
  const double r = norm(s.x);
  if (r == 0.0)
    throw std::invalid_argument("cannot project x = 0 onto the sphere");
  PhaseState out;
  for (int k = 0; k < 4; ++k)
    out.x[k] = s.x[k] / r;
  out.p = axpy(-dot(out.x, s.p), out.x, s.p);
  return out;
}

double ClassicalGenerators::M(int a, int b) const {
  if (a < 1 || a > 6 || b < 1 || b > 6)
    throw std::out_of_range("generator label must be in 1..6");
  if (a == b)
    return 0.0;
  if (a > b)
    return -M(b, a);
  if (b <= 4)
    return J[a - 1][b - 1];
  if (b == 5)
    return K[a - 1];
  if (a <= 4)
    return L[a - 1];
  return h;
}

std::complex<double> ClassicalGenerators::Aplus(int j) const { return M(5, j) - I * M(6, j); }
std::complex<double> ClassicalGenerators::Aminus(int j) const { return M(5, j) + I * M(6, j); }

ClassicalGenerators classical_generators(const PhaseState &s) {
  ClassicalGenerators g;
  double jj = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      g.J[i][j] = s.x[i] * s.p[j] - s.x[j] * s.p[i];
      jj += g.J[i][j] * g.J[i][j];
    }
  g.H = 0.5 * jj;
  g.h = std::sqrt(g.H);
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < 4; ++k)
      g.K[i] += g.J[i][k] * s.x[k];
    g.L[i] = g.h * s.x[i];
  }
  return g;
}

PhaseState ambient_map(const AmbientState &a) {
  const double r = norm(a.xi);
  if (r == 0.0)
    throw std::invalid_argument("ambient map needs xi != 0");
  const double px = dot(a.pi, a.xi);
  PhaseState s;
  for (int k = 0; k < 4; ++k) {
    s.x[k] = a.xi[k] / r;
    s.p[k] = r * a.pi[k] - px * a.xi[k] / r;
  }
  return s;
}

double dirac_bracket_basis(const PhaseState &s, BracketKind kind, int i, int j) {
  check_label(i);
  check_label(j);
  switch (kind) {
  case BracketKind::XX:
    return 0.0;
  case BracketKind::PX:
    return (i == j ? 1.0 : 0.0) - s.x[i - 1] * s.x[j - 1];
  case BracketKind::PP:
    return s.x[i - 1] * s.p[j - 1] - s.x[j - 1] * s.p[i - 1];
  }
  return 0.0;
}

double poisson_oracle(const Observable &f, const Observable &g, const AmbientState &a,
                      double step) {
  if (!(step > 0.0))
    throw std::invalid_argument("finite-difference step must be positive");
  // Central difference of an observable along one ambient coordinate.
  auto partial = [&](const Observable &obs, bool momentum, int k) {
    AmbientState plus = a, minus = a;
    (momentum ? plus.pi : plus.xi)[k] += step;
    (momentum ? minus.pi : minus.xi)[k] -= step;
    return (obs(ambient_map(plus)) - obs(ambient_map(minus))) / (2.0 * step);
  };
  double out = 0.0;
  for (int k = 0; k < 4; ++k)
    out += partial(f, true, k) * partial(g, false, k) - partial(g, true, k) * partial(f, false, k);
  return out;
}

AmbientState random_ambient(std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  AmbientState a;
  do {
    for (int k = 0; k < 4; ++k)
      a.xi[k] = u(rng);
  } while (norm(a.xi) < 0.25);
  for (int k = 0; k < 4; ++k)
    a.pi[k] = u(rng);
  return a;
}

std::vector<verify::CheckResult> check_bracket_oracle(std::uint64_t seed, int count, double step,
                                                      double tolerance) {
  std::mt19937_64 rng(seed);
  auto xo = [](int i) { return Observable([i](const PhaseState &s) { return s.x[i - 1]; }); };
  auto po = [](int i) { return Observable([i](const PhaseState &s) { return s.p[i - 1]; }); };
  auto jo = [](int i, int k) {
    return Observable(
        [i, k](const PhaseState &s) { return s.x[i - 1] * s.p[k - 1] - s.x[k - 1] * s.p[i - 1]; });
  };

  double xx = 0.0, px = 0.0, pp = 0.0, cov = 0.0, anti = 0.0;
  for (int n = 0; n < count; ++n) {
    const AmbientState a = random_ambient(rng);
    const PhaseState s = ambient_map(a);
    for (int i = 1; i <= 4; ++i)
      for (int j = 1; j <= 4; ++j) {
        xx = std::max(xx, std::abs(poisson_oracle(xo(i), xo(j), a, step) -
                                   dirac_bracket_basis(s, BracketKind::XX, i, j)));
        const double pxij = poisson_oracle(po(i), xo(j), a, step);
        px = std::max(px, std::abs(pxij - dirac_bracket_basis(s, BracketKind::PX, i, j)));
        anti = std::max(anti, std::abs(pxij + poisson_oracle(xo(j), po(i), a, step)));
        pp = std::max(pp, std::abs(poisson_oracle(po(i), po(j), a, step) -
                                   dirac_bracket_basis(s, BracketKind::PP, i, j)));
      }
    // {J_ik, x_l} = delta_lk x_i - delta_il x_k.
    for (int i = 1; i <= 4; ++i)
      for (int k = i + 1; k <= 4; ++k)
        for (int l = 1; l <= 4; ++l) {
          const double want = (l == k ? s.x[i - 1] : 0.0) - (i == l ? s.x[k - 1] : 0.0);
          cov = std::max(cov, std::abs(poisson_oracle(jo(i, k), xo(l), a, step) - want));
        }
  }
  return {
      verify::make_result("bracket.{x_i,x_j}=0", xx, tolerance),
      verify::make_result("bracket.{p_i,x_j}=delta-x_ix_j", px, tolerance),
      verify::make_result("bracket.{p_i,p_j}=J_ij", pp, tolerance),
      verify::make_result("bracket.{J_ik,x_l}", cov, tolerance),
      verify::make_result("bracket.antisymmetry", anti, tolerance),
  };
}

double restrictive_residual(const ClassicalGenerators &g) {
  const auto gs = as_generator_set(g);
  const auto t = algebra::tensor_T(gs, 0.0);
  const auto r = algebra::tensor_R(gs);
  double worst = 0.0;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      worst = std::max({worst, std::abs(t[a][b](0, 0)), std::abs(r[a][b](0, 0))});
  return worst;
}

double casimir_value(const ClassicalGenerators &g) {
  double s = 0.0;
  for (int a = 1; a <= 6; ++a)
    for (int b = 1; b <= 6; ++b)
      s += algebra::metric(a) * algebra::metric(b) * g.M(a, b) * g.M(a, b);
  return s;
}

double omega(const PhaseState &s) { return 2.0 * norm(s.p); }

double period(const PhaseState &s) {
  const double w = omega(s);
  return w > 0.0 ? 2.0 * M_PI / w : std::numeric_limits<double>::infinity();
}

PhaseState analytic_solution(const PhaseState &s0, double t) {
  const double root_h = norm(s0.p);
  if (root_h == 0.0)
    return s0;
  const double c = std::cos(2.0 * root_h * t);
  const double sn = std::sin(2.0 * root_h * t);
  PhaseState s;
  for (int k = 0; k < 4; ++k) {
    s.x[k] = c * s0.x[k] + sn * s0.p[k] / root_h;
    s.p[k] = -root_h * sn * s0.x[k] + c * s0.p[k];
  }
  return s;
}

std::string method_name(Method m) { return m == Method::Analytic ? "analytic" : "rk4"; }

namespace {

int step_count(double t_end, double dt) {
  if (!(dt > 0.0))
    throw std::invalid_argument("dt must be positive");
  if (t_end < 0.0)
    throw std::invalid_argument("t_end must be non-negative");
  return std::max(1, static_cast<int>(std::lround(t_end / dt)));
}

} // namespace

Trajectory sample_analytic(const PhaseState &s0, double t_end, double dt) {
  const int steps = step_count(t_end, dt);
  const double h = t_end / steps;
  Trajectory traj;
  traj.method = Method::Analytic;
  traj.degenerate = norm(s0.p) == 0.0;
  for (int k = 0; k <= steps; ++k) {
    traj.times.push_back(k * h);
    traj.states.push_back(analytic_solution(s0, k * h));
  }
  return traj;
}

Trajectory integrate(const PhaseState &s0, double t_end, double dt) {
  const int steps = step_count(t_end, dt);
  const double h = t_end / steps;
  Trajectory traj;
  traj.method = Method::Rk4;
  if (norm(s0.p) == 0.0) {
    traj.degenerate = true;
    for (int k = 0; k <= steps; ++k) {
      traj.times.push_back(k * h);
      traj.states.push_back(s0);
    }
    return traj;
  }
  if (dt >= period(s0) / 10.0)
    throw std::invalid_argument("dt must be below a tenth of the period pi/sqrt(H)");

  auto rhs = [](const PhaseState &s) {
    const double p2 = dot(s.p, s.p);
    PhaseState d;
    for (int k = 0; k < 4; ++k) {
      d.x[k] = 2.0 * s.p[k];
      d.p[k] = -2.0 * p2 * s.x[k];
    }
    return d;
  };
  auto shifted = [](const PhaseState &s, double a, const PhaseState &d) {
    return PhaseState{axpy(a, d.x, s.x), axpy(a, d.p, s.p)};
  };

  PhaseState s = s0;
  traj.times.push_back(0.0);
  traj.states.push_back(s);
  for (int k = 1; k <= steps; ++k) {
    const PhaseState k1 = rhs(s);
    const PhaseState k2 = rhs(shifted(s, 0.5 * h, k1));
    const PhaseState k3 = rhs(shifted(s, 0.5 * h, k2));
    const PhaseState k4 = rhs(shifted(s, h, k3));
    for (int c = 0; c < 4; ++c) {
      s.x[c] += h / 6.0 * (k1.x[c] + 2.0 * k2.x[c] + 2.0 * k3.x[c] + k4.x[c]);
      s.p[c] += h / 6.0 * (k1.p[c] + 2.0 * k2.p[c] + 2.0 * k3.p[c] + k4.p[c]);
    }
    s = project(s);
    traj.times.push_back(k * h);
    traj.states.push_back(s);
  }
  return traj;
}

MotionTolerances MotionTolerances::for_method(Method m) {
  MotionTolerances t;
  if (m == Method::Rk4) {
    t.constants = 1e-6;
    t.drift = 1e-8;
    t.velocity = 1e-6;
  }
  return t;
}

std::vector<verify::CheckResult> check_motion_constants(const Trajectory &traj) {
  return check_motion_constants(traj, MotionTolerances::for_method(traj.method));
}

std::vector<verify::CheckResult> check_motion_constants(const Trajectory &traj,
                                                        const MotionTolerances &tol) {
  if (traj.states.empty())
    throw std::invalid_argument("empty trajectory");
  std::vector<verify::CheckResult> out;

  double constraint = 0.0;
  for (const auto &s : traj.states)
    constraint = std::max(constraint, constraint_residual(s));
  out.push_back(verify::make_result("motion.constraints", constraint, tol.constraint));

  if (traj.degenerate) {
    double moved = 0.0;
    for (const auto &s : traj.states)
      moved = std::max(moved, state_distance(s, traj.states.front()));
    auto r = verify::make_result("motion.fixed_point", moved, 0.0);
    r.note = "degenerate";
    out.push_back(std::move(r));
    return out;
  }

  const ClassicalGenerators g0 = classical_generators(traj.states.front());
  const double scale_h = std::max(1.0, g0.H);
  double drift_h = 0.0, drift_j = 0.0, amp = 0.0, amp_rel = 0.0, cas = 0.0, tensors = 0.0;
  for (std::size_t n = 0; n < traj.states.size(); ++n) {
    const double t = traj.times[n];
    const ClassicalGenerators g = classical_generators(traj.states[n]);
    drift_h = std::max(drift_h, std::abs(g.H - g0.H) / scale_h);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        drift_j = std::max(drift_j, std::abs(g.J[i][j] - g0.J[i][j]) / std::sqrt(scale_h));
    const std::complex<double> phase = std::exp(-2.0 * I * g0.h * t);
    std::complex<double> apam = 0.0;
    for (int j = 1; j <= 4; ++j) {
      amp = std::max(amp, std::abs(g.Aplus(j) * phase - g0.Aplus(j)) / std::sqrt(scale_h));
      amp = std::max(amp, std::abs(g.Aminus(j) * std::conj(phase) - g0.Aminus(j)) /
                              std::sqrt(scale_h));
      apam += g.Aplus(j) * g.Aminus(j);
    }
    amp_rel = std::max(amp_rel, std::abs(apam - 2.0 * g.H) / scale_h);
    cas = std::max(cas, std::abs(casimir_value(g)) / scale_h);
    tensors = std::max(tensors, restrictive_residual(g) / scale_h);
  }
  out.push_back(verify::make_result("motion.H_conserved", drift_h, tol.drift));
  out.push_back(verify::make_result("motion.J_conserved", drift_j, tol.drift));
  out.push_back(verify::make_result("motion.A+-exp(-+2it.sqrtH)=const", amp, tol.constants));
  out.push_back(verify::make_result("motion.A+.A-=2H", amp_rel, tol.constants));
  out.push_back(verify::make_result("motion.M^abM_ab=0", cas, tol.constants));
  out.push_back(verify::make_result("motion.T_ab=R^ab=0", tensors, tol.constants));

  // p = xdot/2 with the five-point stencil on interior samples.
  double vel = 0.0;
  const std::size_t m = traj.states.size();
  if (m >= 5) {
    const double dt = traj.times[1] - traj.times[0];
    for (std::size_t n = 2; n + 2 < m; ++n)
      for (int k = 0; k < 4; ++k) {
        const double xdot = (traj.states[n - 2].x[k] - 8.0 * traj.states[n - 1].x[k] +
                             8.0 * traj.states[n + 1].x[k] - traj.states[n + 2].x[k]) /
                            (12.0 * dt);
        vel = std::max(vel, std::abs(0.5 * xdot - traj.states[n].p[k]) / std::sqrt(scale_h));
      }
    out.push_back(verify::make_result("motion.p=xdot/2", vel, tol.velocity));
  }
  return out;
}

double max_deviation_from_analytic(const Trajectory &traj) {
  double d = 0.0;
  for (std::size_t n = 0; n < traj.states.size(); ++n)
    d = std::max(d, state_distance(traj.states[n],
                                   analytic_solution(traj.states.front(), traj.times[n])));
  return d;
}

double measure_period(const Trajectory &traj) {
  const auto nan = std::numeric_limits<double>::quiet_NaN();
  if (traj.degenerate || traj.states.size() < 2)
    return nan;
  const Vec4 &x0 = traj.states.front().x;
  auto g = [&](std::size_t n) { return dot(traj.states[n].x, x0); };
  auto dg = [&](std::size_t n) { return 2.0 * dot(traj.states[n].p, x0); };

  std::vector<double> zeros;
  for (std::size_t n = 0; n + 1 < traj.states.size(); ++n) {
    const double ga = g(n), gb = g(n + 1);
    if (ga == 0.0 && n > 0) {
      zeros.push_back(traj.times[n]);
      continue;
    }
    if (ga * gb >= 0.0)
      continue;
    // Cubic Hermite on [t_n, t_n+1], root by bisection.
    const double ta = traj.times[n], h = traj.times[n + 1] - ta;
    const double ma = dg(n) * h, mb = dg(n + 1) * h;
    auto cubic = [&](double u) {
      const double u2 = u * u, u3 = u2 * u;
      return (2 * u3 - 3 * u2 + 1) * ga + (u3 - 2 * u2 + u) * ma + (-2 * u3 + 3 * u2) * gb +
             (u3 - u2) * mb;
    };
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (lo + hi);
      if ((cubic(lo) < 0.0) == (cubic(mid) < 0.0))
        lo = mid;
      else
        hi = mid;
    }
    zeros.push_back(ta + 0.5 * (lo + hi) * h);
  }
  if (zeros.size() < 2)
    return nan;
  // Zeros of cos are half a period apart.
  return 2.0 * (zeros.back() - zeros.front()) / static_cast<double>(zeros.size() - 1);
}

} // namespace sga::classical
