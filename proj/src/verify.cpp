#include "sga/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sga::verify {

namespace {

using algebra::GeneratorIndex;
using algebra::metric;
using operators::Representation;

const std::complex<double> I{0.0, 1.0};

Matrix comm(const Matrix &a, const Matrix &b) { return a * b - b * a; }
Matrix anticomm(const Matrix &a, const Matrix &b) { return a * b + b * a; }

// Shorthand access to the matrices of a representation.
struct Ctx {
  const Representation &rep;
  int N;
  Eigen::Index dim;
  Matrix id;

  explicit Ctx(const Representation &r)
      : rep(r), N(r.space->max_level()), dim(r.space->dim()),
        id(Matrix::Identity(r.space->dim(), r.space->dim())) {}

  const Matrix &X(int i) const { return rep.X[i - 1].matrix(); }
  const Matrix &P(int i) const { return rep.P[i - 1].matrix(); }
  const Matrix &K(int i) const { return rep.ladder.K[i - 1].matrix(); }
  const Matrix &L(int i) const { return rep.ladder.L[i - 1].matrix(); }
  const Matrix &Ap(int i) const { return rep.ladder.Aplus[i - 1].matrix(); }
  const Matrix &Am(int i) const { return rep.ladder.Aminus[i - 1].matrix(); }
  const Matrix &Vp(int i) const { return rep.eigen.Vplus[i - 1].matrix(); }
  const Matrix &Vm(int i) const { return rep.eigen.Vminus[i - 1].matrix(); }
  const Matrix &h() const { return rep.ham.h.matrix(); }
  const Matrix &H() const { return rep.ham.H.matrix(); }
  Matrix J(int i, int j) const { return operators::j_component(rep.J, i, j).matrix(); }

  Matrix fn_h(const std::function<double(double)> &fn) const {
    return operators::hermitian_function(rep.ham.h, fn).matrix();
  }

  // Check comparing the columns of levels 0..interior_level(N, factors).
  CheckResult cmp(std::string name, const Matrix &lhs, const Matrix &rhs, int factors,
                  double tol) const {
    const int top = interior_level(N, factors);
    const Eigen::Index cols = rep.space->dim_through(top);
    return make_result(std::move(name), relative_residual(lhs, rhs, cols), tol,
                       std::pair<int, int>{0, top});
  }

  // Worst of several comparisons reported as one check.
  CheckResult worst(std::string name, const std::vector<std::pair<Matrix, Matrix>> &pairs,
                    int factors, double tol) const {
    const int top = interior_level(N, factors);
    const Eigen::Index cols = rep.space->dim_through(top);
    double r = 0.0;
    for (const auto &[lhs, rhs] : pairs)
      r = std::max(r, relative_residual(lhs, rhs, cols));
    return make_result(std::move(name), r, tol, std::pair<int, int>{0, top});
  }
};

std::string idx(int i) { return std::to_string(i); }

template <typename F> auto timed(bool enabled, F &&fn) {
  const auto t0 = std::chrono::steady_clock::now();
  auto out = fn();
  if (enabled) {
    const double s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (auto &c : out)
      c.seconds = s;
  }
  return out;
}

} // namespace

CheckResult make_result(std::string name, double residual, double tolerance,
                        std::optional<std::pair<int, int>> levels) {
  CheckResult r;
  r.name = std::move(name);
  r.residual = residual;
  r.tolerance = tolerance;
  r.pass = residual <= tolerance;
  r.levels = levels;
  return r;
}

bool VerificationReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult &c) { return c.pass; });
}

std::size_t VerificationReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const CheckResult &c) { return !c.pass; }));
}

double relative_residual(const Matrix &lhs, const Matrix &rhs, Eigen::Index cols) {
  const double diff = (lhs.leftCols(cols) - rhs.leftCols(cols)).norm();
  const double scale = std::max({1.0, lhs.leftCols(cols).norm(), rhs.leftCols(cols).norm()});
  return diff / scale;
}

int interior_level(int max_level, int factors) { return std::max(max_level - factors, 0); }

std::vector<CheckResult> check_commutators(const Representation &rep, const VerifyOptions &opts) {
  const Ctx c(rep);
  const auto gs = operators::to_generator_set(rep.so42);
  const double tol = opts.tolerance;
  std::vector<CheckResult> out;
  const auto &gens = GeneratorIndex::all();
  for (std::size_t p = 0; p < gens.size(); ++p)
    for (std::size_t q = p + 1; q < gens.size(); ++q) {
      const auto &x = gens[p];
      const auto &y = gens[q];
      out.push_back(c.cmp("commutator[" + x.name() + "," + y.name() + "]", comm(gs[x], gs[y]),
                          gs.evaluate(algebra::commutator_rhs(x, y)), 2, tol));
    }
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) {
      const Matrix rhs = -2.0 * I * c.J(i, j) - (i == j ? 2.0 : 0.0) * c.h();
      out.push_back(c.cmp("ladder[A+" + idx(i) + ",A-" + idx(j) + "]", comm(c.Ap(i), c.Am(j)),
                          rhs, 2, tol));
    }
  const Matrix zero = Matrix::Zero(c.dim, c.dim);
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j) {
      out.push_back(c.cmp("ladder[A+" + idx(i) + ",A+" + idx(j) + "]", comm(c.Ap(i), c.Ap(j)),
                          zero, 2, tol));
      out.push_back(c.cmp("ladder[A-" + idx(i) + ",A-" + idx(j) + "]", comm(c.Am(i), c.Am(j)),
                          zero, 2, tol));
    }
  for (int i = 1; i <= 4; ++i) {
    out.push_back(c.cmp("ladder.hA+" + idx(i) + "=A+" + idx(i) + "(h+1)", c.h() * c.Ap(i),
                        c.Ap(i) * (c.h() + c.id), 2, tol));
    out.push_back(c.cmp("ladder.hA-" + idx(i) + "=A-" + idx(i) + "(h-1)", c.h() * c.Am(i),
                        c.Am(i) * (c.h() - c.id), 2, tol));
    out.push_back(c.cmp("ladder[A-" + idx(i) + ",A+" + idx(i) + "]=2h", comm(c.Am(i), c.Ap(i)),
                        2.0 * c.h(), 2, tol));
  }
  return out;
}

std::vector<CheckResult> check_restrictive(const Representation &rep, const VerifyOptions &opts) {
  const Ctx c(rep);
  const auto gs = operators::to_generator_set(rep.so42);
  const double tol = opts.tolerance;
  const Matrix zero = Matrix::Zero(c.dim, c.dim);
  std::vector<CheckResult> out;

  const auto t = algebra::tensor_T(gs, opts.c);
  const auto r = algebra::tensor_R(gs);
  for (int a = 1; a <= 6; ++a)
    for (int b = a; b <= 6; ++b)
      out.push_back(c.cmp("restrictive.T~[" + idx(a) + idx(b) + "]", t[a - 1][b - 1], zero, 2, tol));
  for (int a = 1; a <= 6; ++a)
    for (int b = a + 1; b <= 6; ++b)
      out.push_back(c.cmp("restrictive.R[" + idx(a) + idx(b) + "]", r[a - 1][b - 1], zero, 2, tol));

  // Both routes to the tensors are pure algebra on the matrices, so they
  // must agree on every column.
  {
    const auto tc = algebra::tensor_T_components(gs, opts.c);
    const auto rc = algebra::tensor_R_components(gs);
    std::vector<std::pair<Matrix, Matrix>> tp, rp;
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b) {
        tp.emplace_back(t[a][b], tc[a][b]);
        rp.emplace_back(r[a][b], rc[a][b]);
      }
    auto full = [&](std::string name, const std::vector<std::pair<Matrix, Matrix>> &pairs) {
      double worst = 0.0;
      for (const auto &[x, y] : pairs)
        worst = std::max(worst, relative_residual(x, y, c.dim));
      return make_result(std::move(name), worst, tol, std::pair<int, int>{0, c.N});
    };
    out.push_back(full("restrictive.T~.contraction=components", tp));
    out.push_back(full("restrictive.R.contraction=components", rp));
  }

  Matrix k2 = zero, l2 = zero, kl = zero;
  for (int i = 1; i <= 4; ++i) {
    k2 += c.K(i) * c.K(i);
    l2 += c.L(i) * c.L(i);
    kl += anticomm(c.K(i), c.L(i));
  }
  const Matrix h2 = c.h() * c.h();

  // Forms obtained from the position/momentum construction, evaluated
  // independently of the tensor code.
  for (int i = 1; i <= 4; ++i) {
    Matrix jl = zero, jk = zero;
    for (int k = 1; k <= 4; ++k) {
      jl += anticomm(c.J(i, k), c.L(k));
      jk += anticomm(c.J(i, k), c.K(k));
    }
    out.push_back(c.cmp("derived.{J,L}-{h,K}[" + idx(i) + "]", jl, anticomm(c.h(), c.K(i)), 2, tol));
    out.push_back(c.cmp("derived.{J,K}+{h,L}[" + idx(i) + "]", jk, -anticomm(c.h(), c.L(i)), 2, tol));
  }
  out.push_back(c.cmp("derived.K2-3L2+2h2+2", k2 - 3.0 * l2 + 2.0 * h2 + 2.0 * c.id, zero, 2, tol));
  out.push_back(c.cmp("derived.L2-3K2+2h2+2", l2 - 3.0 * k2 + 2.0 * h2 + 2.0 * c.id, zero, 2, tol));
  out.push_back(c.cmp("derived.K2=h2+1", k2, h2 + c.id, 2, tol));
  out.push_back(c.cmp("derived.L2=h2+1", l2, h2 + c.id, 2, tol));
  out.push_back(c.cmp("derived.KL+LK=0", kl, zero, 2, tol));
  {
    std::vector<std::pair<Matrix, Matrix>> pairs;
    for (int i = 1; i <= 4; ++i)
      for (int j = i; j <= 4; ++j) {
        Matrix jj = zero;
        for (int k = 1; k <= 4; ++k)
          jj += anticomm(c.J(i, k), c.J(j, k));
        pairs.emplace_back(anticomm(c.L(i), c.L(j)) + anticomm(c.K(i), c.K(j)) - jj,
                           (i == j ? 2.0 : 0.0) * c.id);
      }
    out.push_back(c.worst("derived.{L,L}+{K,K}-{J,J}=2delta", pairs, 2, tol));
  }
  {
    std::vector<std::pair<Matrix, Matrix>> pairs;
    for (int k = 1; k <= 4; ++k) {
      Matrix s = zero;
      for (int i = 1; i <= 4; ++i)
        s += comm(c.L(i), c.J(i, k));
      pairs.emplace_back(s, -3.0 * I * c.L(k));
    }
    out.push_back(c.worst("derived.[L_i,J_ik]=-3iL_k", pairs, 2, tol));
  }
  out.push_back(c.cmp("restrictive.H=h2-1", c.H(), h2 - c.id, 2, tol));

  // Covariance of the symmetric tensor under the algebra, on T itself
  // (the c g_ab shift is central and drops out of the commutator).
  {
    const auto t0 = algebra::tensor_T(gs, 0.0);
    // Only the interior columns are compared, so only those are formed.
    const Eigen::Index cols = rep.space->dim_through(interior_level(c.N, 3));
    auto T = [&](int a, int b) -> const Matrix & { return t0[a - 1][b - 1]; };
    std::vector<std::pair<Matrix, Matrix>> pairs;
    for (const auto &g : GeneratorIndex::all()) {
      const int a = g.a(), b = g.b();
      for (int cc = 1; cc <= 6; ++cc)
        for (int d = cc; d <= 6; ++d) {
          Matrix rhs = Matrix::Zero(c.dim, cols);
          if (const int s = metric(a, cc))
            rhs += s * T(b, d).leftCols(cols);
          if (const int s = metric(b, cc))
            rhs -= s * T(a, d).leftCols(cols);
          if (const int s = metric(a, d))
            rhs += s * T(cc, b).leftCols(cols);
          if (const int s = metric(b, d))
            rhs -= s * T(cc, a).leftCols(cols);
          const Matrix lhs = gs[g] * T(cc, d).leftCols(cols) - T(cc, d) * gs[g].leftCols(cols);
          pairs.emplace_back(lhs, I * rhs);
        }
    }
    out.push_back(c.worst("restrictive.T.covariance", pairs, 3, tol));
  }
  return out;
}

std::vector<CheckResult> check_casimirs(const Representation &rep, const VerifyOptions &opts) {
  const Ctx c(rep);
  const auto gs = operators::to_generator_set(rep.so42);
  const Matrix zero = Matrix::Zero(c.dim, c.dim);
  std::vector<CheckResult> out;

  Matrix c2 = zero;
  for (int a = 1; a <= 6; ++a)
    for (int b = 1; b <= 6; ++b)
      if (a != b) {
        const Matrix m = gs.M(a, b);
        c2 += static_cast<double>(metric(a) * metric(b)) * m * m;
      }
  out.push_back(c.cmp("casimir.C2=-3c", c2, -3.0 * opts.c * c.id, 2, opts.tolerance));

  const auto r = algebra::tensor_R(gs);
  Matrix rg = zero;
  for (int a = 1; a <= 6; ++a)
    rg += static_cast<double>(metric(a)) * r[a - 1][a - 1];
  out.push_back(c.cmp("casimir.R^ab.g_ab=0", rg, zero, 2, opts.tolerance));

  // C3 = M_ab M^bc M_c^a with the inner pair symmetrized, i.e. M_ab T^ab
  // with T from the contraction code. The plain ordered product differs
  // from it by commutator terms that add up to 2i C2.
  const auto t = algebra::tensor_T(gs, 0.0);
  Matrix c3 = zero, ordered = zero;
  for (int a = 1; a <= 6; ++a)
    for (int b = 1; b <= 6; ++b) {
      if (a == b)
        continue;
      const Matrix m = gs.M(a, b);
      c3 += static_cast<double>(metric(a) * metric(b)) * 0.5 * m * t[a - 1][b - 1];
      for (int cc = 1; cc <= 6; ++cc)
        if (cc != a && cc != b)
          ordered += static_cast<double>(metric(a) * metric(b) * metric(cc)) * m *
                     gs.M(b, cc) * gs.M(cc, a);
    }
  out.push_back(c.cmp("casimir.C3=M_abT^ab/2=0", c3, zero, 3, opts.tolerance));
  out.push_back(c.cmp("casimir.M_abM^bcM_c^a=2iC2", ordered, 2.0 * I * c2, 3, opts.tolerance));
  return out;
}

std::vector<SpectrumRow> spectrum_table(const Representation &rep) {
  const int N = rep.space->max_level();
  Eigen::SelfAdjointEigenSolver<Matrix> es(rep.ham.H.matrix(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigensolver failed on H");
  std::vector<SpectrumRow> rows(static_cast<std::size_t>(N) + 1);
  for (int n = 0; n <= N; ++n) {
    rows[n].level = n;
    rows[n].exact = static_cast<double>(n * (n + 2));
    rows[n].degeneracy = (n + 1) * (n + 1);
  }
  for (const double lambda : es.eigenvalues()) {
    // lambda = n(n+2) <=> n = sqrt(lambda + 1) - 1.
    const int n = static_cast<int>(std::lround(std::sqrt(std::max(0.0, lambda + 1.0)) - 1.0));
    if (n < 0 || n > N)
      throw std::runtime_error("eigenvalue of H outside the truncated levels");
    auto &row = rows[n];
    row.measured += lambda;
    row.measured_multiplicity += 1;
    row.residual = std::max(row.residual, std::abs(lambda - row.exact));
  }
  for (auto &row : rows)
    if (row.measured_multiplicity > 0)
      row.measured /= row.measured_multiplicity;
  return rows;
}

CheckResult check_spectrum(const Representation &rep, const VerifyOptions &opts) {
  const auto rows = spectrum_table(rep);
  double residual = 0.0;
  for (const auto &row : rows) {
    if (row.measured_multiplicity != row.degeneracy)
      residual = std::numeric_limits<double>::infinity();
    residual = std::max(residual, row.residual);
  }
  return make_result("spectrum.H=n(n+2),deg=(n+1)^2", residual, opts.spectrum_tolerance,
                     std::pair<int, int>{0, rep.space->max_level()});
}

std::vector<CheckResult> check_su2(const Representation &rep, const VerifyOptions &opts) {
  const Ctx c(rep);
  const std::array<Matrix, 3> R{c.J(2, 3), -c.J(1, 3), c.J(1, 2)};
  const std::array<Matrix, 3> S{c.J(1, 4), c.J(2, 4), c.J(3, 4)};
  Matrix m2 = Matrix::Zero(c.dim, c.dim), n2 = m2;
  for (int k = 0; k < 3; ++k) {
    const Matrix m = 0.5 * (R[k] + S[k]);
    const Matrix n = 0.5 * (R[k] - S[k]);
    m2 += m * m;
    n2 += n * n;
  }
  std::vector<CheckResult> out;
  const auto &s = *rep.space;
  for (int n = 0; n <= c.N; ++n) {
    const double j = n / 2.0;
    const Eigen::Index off = s.offset(n), sz = s.level_size(n);
    const Matrix target = j * (j + 1.0) * Matrix::Identity(sz, sz);
    const Matrix mb = m2.block(off, off, sz, sz);
    const Matrix nb = n2.block(off, off, sz, sz);
    out.push_back(make_result("su2.M2=j(j+1)[n=" + idx(n) + "]", relative_residual(mb, target, sz),
                              opts.tolerance, std::pair<int, int>{n, n}));
    out.push_back(make_result("su2.N2=j(j+1)[n=" + idx(n) + "]", relative_residual(nb, target, sz),
                              opts.tolerance, std::pair<int, int>{n, n}));
  }
  out.push_back(make_result("su2.H=2(M2+N2)", relative_residual(c.H(), 2.0 * (m2 + n2), c.dim),
                            opts.tolerance, std::pair<int, int>{0, c.N}));
  return out;
}

CheckResult check_f_recursion(int h_max, double tolerance) {
  double worst = 0.0;
  for (int h = 1; h <= h_max; ++h) {
    const double target = 2.0 * h + 1.0;
    const double got = operators::f_gamma(h) * operators::f_gamma(h + 1.0);
    worst = std::max(worst, std::abs(got - target) / target);
  }
  return make_result("f.f(h)f(h+1)=2h+1", worst, tolerance);
}

std::vector<CheckResult> check_f_identities(const Representation &rep, const VerifyOptions &opts) {
  const Ctx c(rep);
  const Matrix sqrt_h = c.fn_h([](double x) { return std::sqrt(x); });
  const Matrix f = c.fn_h(operators::f_gamma);
  const Matrix f_inv = c.fn_h([](double x) { return 1.0 / operators::f_gamma(x); });
  const Matrix f_over = c.fn_h([](double x) { return operators::f_gamma(x) / std::sqrt(2.0 * x); });
  std::vector<CheckResult> out;
  std::vector<std::pair<Matrix, Matrix>> from_jx, flf, p_from_l;
  for (int i = 1; i <= 4; ++i) {
    Matrix jx = Matrix::Zero(c.dim, c.dim);
    for (int j = 1; j <= 4; ++j)
      jx += anticomm(c.J(i, j), c.X(j));
    const Matrix core = sqrt_h * jx * sqrt_h;
    flf.emplace_back(f * c.L(i) * f, -core);
    from_jx.emplace_back(c.L(i), -f_inv * core * f_inv);
    p_from_l.emplace_back(c.P(i), f_over * c.L(i) * f_over);
  }
  out.push_back(c.worst("f.f(h)Lf(h)=-sqrt(h){J,X}sqrt(h)", flf, 2, opts.chain_tolerance));
  out.push_back(c.worst("f.L=-f^-1 sqrt(h){J,X}sqrt(h) f^-1", from_jx, 2, opts.chain_tolerance));
  out.push_back(c.worst("f.P=(f/sqrt(2h))L(f/sqrt(2h))", p_from_l, 2, opts.chain_tolerance));
  return out;
}

std::vector<CheckResult> check_position_momentum(const Representation &rep,
                                                 const VerifyOptions &opts) {
  const Ctx c(rep);
  const double tol = opts.tolerance;
  const Matrix zero = Matrix::Zero(c.dim, c.dim);
  std::vector<CheckResult> out;

  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j)
      out.push_back(c.cmp("position[X" + idx(i) + ",X" + idx(j) + "]=0", comm(c.X(i), c.X(j)),
                          zero, 2, tol));
  Matrix x2 = zero, xp = zero, px = zero, p2 = zero;
  for (int i = 1; i <= 4; ++i) {
    x2 += c.X(i) * c.X(i);
    xp += c.X(i) * c.P(i);
    px += c.P(i) * c.X(i);
    p2 += c.P(i) * c.P(i);
  }
  out.push_back(c.cmp("position.X2=1", x2, c.id, 2, tol));
  out.push_back(c.cmp("position.XP+PX=0", xp + px, zero, 2, tol));
  out.push_back(c.cmp("position.XP=3i/2", xp, 1.5 * I * c.id, 2, tol));
  out.push_back(c.cmp("position.PX=-3i/2", px, -1.5 * I * c.id, 2, tol));
  out.push_back(c.cmp("position.H=P2-9/4", c.H(), p2 - 2.25 * c.id, 2, tol));

  std::vector<std::pair<Matrix, Matrix>> px_pairs, pp_pairs, jx_pairs, jp_pairs, hx_pairs;
  for (int j = 1; j <= 4; ++j)
    for (int k = 1; k <= 4; ++k) {
      px_pairs.emplace_back(comm(c.P(j), c.X(k)),
                            -I * ((j == k ? 1.0 : 0.0) * c.id - c.X(j) * c.X(k)));
      pp_pairs.emplace_back(comm(c.P(j), c.P(k)), -I * c.J(j, k));
    }
  for (int i = 1; i <= 4; ++i)
    for (int k = i + 1; k <= 4; ++k)
      for (int l = 1; l <= 4; ++l) {
        const double dkl = k == l ? 1.0 : 0.0, dil = i == l ? 1.0 : 0.0;
        jx_pairs.emplace_back(comm(c.J(i, k), c.X(l)), -I * (dkl * c.X(i) - dil * c.X(k)));
        jp_pairs.emplace_back(comm(c.J(i, k), c.P(l)), -I * (dkl * c.P(i) - dil * c.P(k)));
      }
  for (int i = 1; i <= 4; ++i)
    hx_pairs.emplace_back(comm(c.H(), c.X(i)), -2.0 * I * c.P(i));
  out.push_back(c.worst("position[P_j,X_k]=-i(delta-X_jX_k)", px_pairs, 2, tol));
  out.push_back(c.worst("position[P_j,P_k]=-iJ_jk", pp_pairs, 2, tol));
  out.push_back(c.worst("vector[J_ik,X_l]", jx_pairs, 2, tol));
  out.push_back(c.worst("vector[J_ik,P_l]", jp_pairs, 2, tol));
  out.push_back(c.worst("position[H,X_i]=-2iP_i", hx_pairs, 2, tol));
  return out;
}

std::vector<CheckResult> check_ladder(const Representation &rep, const VerifyOptions &opts) {
  const Ctx c(rep);
  const double tol = opts.tolerance;
  const Matrix zero = Matrix::Zero(c.dim, c.dim);
  std::vector<CheckResult> out;

  double ground = 0.0;
  for (int i = 1; i <= 4; ++i)
    ground = std::max(ground, c.Am(i).col(0).norm() / std::max(1.0, c.Am(i).norm()));
  out.push_back(make_result("ladder.A-_i|0>=0", ground, tol, std::pair<int, int>{0, 0}));

  Matrix pp = zero, mm = zero, pm = zero, mp = zero, k2 = zero, l2 = zero;
  for (int i = 1; i <= 4; ++i) {
    pp += c.Ap(i) * c.Ap(i);
    mm += c.Am(i) * c.Am(i);
    pm += c.Ap(i) * c.Am(i);
    mp += c.Am(i) * c.Ap(i);
    k2 += c.K(i) * c.K(i);
    l2 += c.L(i) * c.L(i);
  }
  const Matrix h2 = c.h() * c.h();
  out.push_back(c.cmp("ladder.A+_iA+_i=0", pp, zero, 2, tol));
  out.push_back(c.cmp("ladder.A-_iA-_i=0", mm, zero, 2, tol));
  out.push_back(c.cmp("ladder.A+_iA-_i=2h2+c-4h", pm, 2.0 * h2 + opts.c * c.id - 4.0 * c.h(), 2, tol));
  out.push_back(c.cmp("ladder.A-_iA+_i=2h2+c+4h", mp, 2.0 * h2 + opts.c * c.id + 4.0 * c.h(), 2, tol));

  // Same sum rule against the level number directly: 2 n^2 on level n.
  Matrix two_n2 = zero;
  for (int n = 0; n <= c.N; ++n)
    two_n2.diagonal().segment(rep.space->offset(n), rep.space->level_size(n)).setConstant(2.0 * n * n);
  out.push_back(c.cmp("ladder.A+_iA-_i=2n^2", pm, two_n2, 2, tol));

  double adj = 0.0;
  for (int i = 1; i <= 4; ++i)
    adj = std::max(adj, relative_residual(c.Ap(i).adjoint(), c.Am(i), c.dim));
  out.push_back(make_result("ladder.(A+_i)^dagger=A-_i", adj, tol, std::pair<int, int>{0, c.N}));

  out.push_back(c.cmp("ladder.K2=h2+1", k2, h2 + c.id, 2, tol));
  out.push_back(c.cmp("ladder.L2=h2+1", l2, h2 + c.id, 2, tol));

  std::vector<std::pair<Matrix, Matrix>> gamma_pairs;
  const Matrix &gamma = rep.ham.gamma.matrix();
  for (int i = 1; i <= 4; ++i) {
    gamma_pairs.emplace_back(comm(gamma, c.Ap(i)), c.Ap(i));
    gamma_pairs.emplace_back(comm(gamma, c.Am(i)), -c.Am(i));
  }
  out.push_back(c.worst("ladder[gamma,A+-]=+-A+-", gamma_pairs, 2, tol));

  // Level bookkeeping: A+ maps level n to n+1 only, A- to n-1 only.
  double shift = 0.0;
  for (int i = 0; i < 4; ++i) {
    const auto &ap = rep.ladder.Aplus[i];
    const auto &am = rep.ladder.Aminus[i];
    for (int from = 0; from <= c.N; ++from) {
      for (const int to : ap.blocks()[from])
        if (to != from + 1)
          shift = std::max(shift, ap.block(to, from).norm());
      for (const int to : am.blocks()[from])
        if (to != from - 1)
          shift = std::max(shift, am.block(to, from).norm());
    }
  }
  out.push_back(make_result("ladder.A+-_shift_level_by_one", shift, tol,
                            std::pair<int, int>{0, c.N}));
  return out;
}

std::vector<CheckResult> check_eigenoperators(const Representation &rep,
                                              const VerifyOptions &opts) {
  const Ctx c(rep);
  const double tol = opts.tolerance;
  const Matrix zero = Matrix::Zero(c.dim, c.dim);
  const Matrix sqrt_h = c.fn_h([](double x) { return std::sqrt(x); });
  const Matrix inv_sqrt_h = c.fn_h([](double x) { return 1.0 / std::sqrt(x); });
  const Matrix inv_h = c.fn_h([](double x) { return 1.0 / x; });
  std::vector<CheckResult> out;

  std::vector<std::pair<Matrix, Matrix>> eig, shift, vv, vpp, vmm, dag, x_route, p_route, x4, a4dag;
  std::array<Matrix, 4> a4p, a4m;
  for (int i = 1; i <= 4; ++i) {
    a4p[i - 1] = inv_sqrt_h * c.Vp(i) * sqrt_h;
    a4m[i - 1] = inv_sqrt_h * c.Vm(i) * sqrt_h;
  }
  for (int i = 1; i <= 4; ++i) {
    eig.emplace_back(comm(c.H(), c.Vp(i)), (2.0 * c.h() - c.id) * c.Vp(i));
    eig.emplace_back(comm(c.H(), c.Vm(i)), (-2.0 * c.h() - c.id) * c.Vm(i));
    shift.emplace_back((c.h() - c.id) * c.Vp(i), c.Vp(i) * c.h());
    shift.emplace_back((c.h() + c.id) * c.Vm(i), c.Vm(i) * c.h());
    dag.emplace_back(c.Vp(i).adjoint(), (c.h() + c.id) * inv_h * c.Vm(i));
    x_route.emplace_back(c.X(i), 0.5 * I * inv_h * (c.Vp(i) - c.Vm(i)));
    p_route.emplace_back(c.P(i), 0.5 * inv_sqrt_h * anticomm(c.h(), c.L(i)) * inv_sqrt_h);
    x4.emplace_back(c.X(i), 0.5 * I * inv_sqrt_h * (a4p[i - 1] - a4m[i - 1]) * inv_sqrt_h);
    a4dag.emplace_back(a4p[i - 1].adjoint(), a4m[i - 1]);
    for (int j = 1; j <= 4; ++j) {
      vv.emplace_back(comm(c.Vm(i), c.Vp(j)),
                      (i == j ? 2.0 : 0.0) * c.h() - 2.0 * I * c.J(i, j));
      if (j > i) {
        vpp.emplace_back(comm(c.Vp(i), c.Vp(j)), zero);
        vmm.emplace_back(comm(c.Vm(i), c.Vm(j)), zero);
      }
    }
  }
  out.push_back(c.worst("eigenop[H,V+-]=(-1+-2h)V+-", eig, 2, tol));
  out.push_back(c.worst("eigenop.(h-+1)V+-=V+-h", shift, 2, tol));
  out.push_back(c.worst("eigenop[V-_i,V+_j]=2h.delta-2iJ", vv, 2, tol));
  out.push_back(c.worst("eigenop[V+_i,V+_j]=0", vpp, 2, tol));
  out.push_back(c.worst("eigenop[V-_i,V-_j]=0", vmm, 2, tol));
  out.push_back(c.worst("eigenop.(V+)^dagger=((h+1)/h)V-", dag, 2, tol));
  out.push_back(c.worst("eigenop.X=(i/2h)(V+-V-)", x_route, 1, tol));
  out.push_back(c.worst("eigenop.X=(i/2)h^-1/2(A+-A-)h^-1/2", x4, 1, tol));
  out.push_back(c.worst("eigenop.(A+)^dagger=A-", a4dag, 2, tol));
  out.push_back(c.worst("eigenop.P=(1/2)h^-1/2{h,L}h^-1/2", p_route, 2, tol));

  // h^-1/2 V+- h^1/2 reproduces A+- up to one phase per sign.
  for (const int sign : {+1, -1}) {
    const auto &a4 = sign > 0 ? a4p : a4m;
    const int top = interior_level(c.N, 1);
    const Eigen::Index cols = rep.space->dim_through(top);
    const Matrix &ref = sign > 0 ? c.Ap(1) : c.Am(1);
    const std::complex<double> phase =
        (ref.leftCols(cols).adjoint() * a4[0].leftCols(cols)).trace() /
        ref.leftCols(cols).squaredNorm();
    double worst = std::abs(std::abs(phase) - 1.0);
    for (int i = 1; i <= 4; ++i) {
      const Matrix &a3 = sign > 0 ? c.Ap(i) : c.Am(i);
      worst = std::max(worst, relative_residual(a4[i - 1], phase * a3, cols));
    }
    auto r = make_result(std::string("eigenop.A") + (sign > 0 ? "+" : "-") + "_from_V=phase*A",
                         worst, tol, std::pair<int, int>{0, top});
    r.note = "phase=" + std::to_string(phase.real()) + (phase.imag() < 0 ? "-" : "+") +
             std::to_string(std::abs(phase.imag())) + "i";
    out.push_back(std::move(r));
  }
  return out;
}

Eigen::VectorXcd eigenstate_vector(const Representation &rep, const std::vector<int> &indices) {
  const int n = static_cast<int>(indices.size());
  if (n > rep.space->max_level() - 1)
    throw std::out_of_range("eigenstate order exceeds N - 1");
  for (const int mu : indices)
    if (mu < 1 || mu > 4)
      throw std::out_of_range("eigenstate index must be in 1..4");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(rep.space->dim());
  v[0] = 1.0;
  for (auto it = indices.rbegin(); it != indices.rend(); ++it)
    v = rep.ladder.Aplus[static_cast<std::size_t>(*it - 1)].matrix() * v;
  return v;
}

hilbert::Polynomial4 build_eigenstate(const Representation &rep, const std::vector<int> &indices) {
  const Eigen::VectorXcd v = eigenstate_vector(rep, indices);
  return rep.space->polynomial(v, static_cast<int>(indices.size()));
}

namespace {

// Nondecreasing index sequences of length n over 1..4.
void multisets(int n, int lo, std::vector<int> &cur, std::vector<std::vector<int>> &out) {
  if (static_cast<int>(cur.size()) == n) {
    out.push_back(cur);
    return;
  }
  for (int mu = lo; mu <= 4; ++mu) {
    cur.push_back(mu);
    multisets(n, mu, cur, out);
    cur.pop_back();
  }
}

} // namespace

std::vector<CheckResult> check_eigenstates(const Representation &rep, const VerifyOptions &opts) {
  const auto &s = *rep.space;
  const int N = s.max_level();
  const double tol = opts.tolerance;
  std::vector<CheckResult> out;
  for (int n = 0; n <= N - 1; ++n) {
    std::vector<std::vector<int>> seqs;
    std::vector<int> cur;
    multisets(n, 1, cur, seqs);

    double harmonic = 0.0, level = 0.0, symmetric = 0.0, traceless = 0.0;
    Matrix span(s.level_size(n), static_cast<Eigen::Index>(seqs.size()));
    for (std::size_t k = 0; k < seqs.size(); ++k) {
      const Eigen::VectorXcd v = eigenstate_vector(rep, seqs[k]);
      const double norm = std::max(1.0, v.norm());
      const Eigen::VectorXcd in_level = v.segment(s.offset(n), s.level_size(n));
      level = std::max(level, std::sqrt(std::max(0.0, v.squaredNorm() - in_level.squaredNorm())) / norm);
      span.col(static_cast<Eigen::Index>(k)) = in_level;

      const auto poly = s.polynomial(v, n);
      if (!poly.is_zero())
        harmonic = std::max(harmonic, hilbert::laplacian(poly).max_abs() / poly.max_abs());

      if (n >= 2) {
        auto rev = seqs[k];
        std::reverse(rev.begin(), rev.end());
        std::rotate(rev.begin(), rev.begin() + 1, rev.end());
        symmetric = std::max(symmetric, (eigenstate_vector(rep, rev) - v).norm() / norm);
      }
    }
    if (n >= 2) {
      // Contract the first two indices for every choice of the rest.
      std::vector<std::vector<int>> rests;
      std::vector<int> tmp;
      multisets(n - 2, 1, tmp, rests);
      for (const auto &rest : rests) {
        Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(s.dim());
        double scale = 1.0;
        for (int mu = 1; mu <= 4; ++mu) {
          std::vector<int> seq{mu, mu};
          seq.insert(seq.end(), rest.begin(), rest.end());
          const Eigen::VectorXcd v = eigenstate_vector(rep, seq);
          scale = std::max(scale, v.norm());
          sum += v;
        }
        traceless = std::max(traceless, sum.norm() / scale);
      }
    }
    Eigen::JacobiSVD<Matrix> svd(span);
    const auto &sv = svd.singularValues();
    const double cutoff = 1e-8 * (sv.size() > 0 ? sv[0] : 1.0);
    const int rank = static_cast<int>((sv.array() > cutoff).count());
    const double rank_gap = std::abs(rank - (n + 1) * (n + 1));

    const std::pair<int, int> lv{n, n};
    const std::string tag = "[n=" + idx(n) + "]";
    out.push_back(make_result("eigenstate.harmonic" + tag, harmonic, tol, lv));
    out.push_back(make_result("eigenstate.in_level" + tag, level, tol, lv));
    if (n >= 2) {
      out.push_back(make_result("eigenstate.symmetric" + tag, symmetric, tol, lv));
      out.push_back(make_result("eigenstate.traceless" + tag, traceless, tol, lv));
    }
    out.push_back(make_result("eigenstate.rank=(n+1)^2" + tag, rank_gap, 0.0, lv));
  }
  return out;
}

std::array<Matrix, 3> spin_matrices(int two_s) {
  const int d = two_s + 1;
  const double s = two_s / 2.0;
  Matrix sp = Matrix::Zero(d, d), sz = Matrix::Zero(d, d);
  // Basis ordered m = s, s-1, ..., -s.
  for (int k = 0; k < d; ++k) {
    const double m = s - k;
    sz(k, k) = m;
    if (k > 0)
      sp(k - 1, k) = std::sqrt(s * (s + 1) - m * (m + 1));
  }
  const Matrix sm = sp.adjoint();
  return {0.5 * (sp + sm), -0.5 * I * (sp - sm), sz};
}

std::array<std::array<Matrix, 3>, 3> so3_restrictive(const std::array<Matrix, 3> &s) {
  const auto d = s[0].rows();
  std::array<std::array<Matrix, 3>, 3> t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      t[i][j] = anticomm(s[i], s[j]) - (i == j ? 0.5 : 0.0) * Matrix::Identity(d, d);
  return t;
}

std::vector<CheckResult> so3_demo() {
  std::vector<CheckResult> out;
  const auto half = so3_restrictive(spin_matrices(1));
  double worst = 0.0;
  for (const auto &row : half)
    for (const auto &m : row)
      worst = std::max(worst, m.cwiseAbs().maxCoeff());
  out.push_back(make_result("so3.spin1/2.T_ij=0", worst, 0.0));

  // Spin 1: T_11 = 2 S_x^2 - 1/2 has eigenvalues 3/2, 3/2, -1/2.
  const auto s1 = spin_matrices(2);
  const auto one = so3_restrictive(s1);
  out.push_back(make_result("so3.spin1.|T_11|=sqrt(19)/2",
                            std::abs(one[0][0].norm() - std::sqrt(19.0) / 2.0), 1e-12));

  // [S_l, T_ij] = i (eps_lik T_kj + eps_ljk T_ik).
  auto eps3 = [](int a, int b, int c) {
    return static_cast<double>((a - b) * (b - c) * (c - a)) / 2.0;
  };
  double cov = 0.0;
  for (const auto &spins : {spin_matrices(1), s1}) {
    const auto t = so3_restrictive(spins);
    for (int l = 0; l < 3; ++l)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          Matrix rhs = Matrix::Zero(spins[0].rows(), spins[0].cols());
          for (int k = 0; k < 3; ++k)
            rhs += I * (eps3(l, i, k) * t[k][j] + eps3(l, j, k) * t[i][k]);
          cov = std::max(cov, (comm(spins[l], t[i][j]) - rhs).cwiseAbs().maxCoeff());
        }
  }
  out.push_back(make_result("so3.covariance", cov, 1e-14));
  return out;
}

VerificationReport run_suite(const Representation &rep, const VerifyOptions &opts) {
  VerificationReport report;
  report.max_level = rep.space->max_level();
  report.dimension = rep.space->dim();
  report.c = opts.c;
  auto add = [&](std::vector<CheckResult> v) {
    for (auto &r : v)
      report.checks.push_back(std::move(r));
  };
  const bool t = opts.timings;
  add(timed(t, [&] { return std::vector<CheckResult>{check_spectrum(rep, opts)}; }));
  add(timed(t, [&] { return check_su2(rep, opts); }));
  add(timed(t, [&] { return check_commutators(rep, opts); }));
  add(timed(t, [&] { return check_restrictive(rep, opts); }));
  add(timed(t, [&] { return check_casimirs(rep, opts); }));
  add(timed(t, [&] { return check_ladder(rep, opts); }));
  add(timed(t, [&] { return check_eigenstates(rep, opts); }));
  add(timed(t, [&] { return check_position_momentum(rep, opts); }));
  add(timed(t, [&] {
    return std::vector<CheckResult>{check_f_recursion(opts.f_max, opts.f_tolerance)};
  }));
  add(timed(t, [&] { return check_f_identities(rep, opts); }));
  add(timed(t, [&] { return check_eigenoperators(rep, opts); }));
  add(timed(t, [&] { return so3_demo(); }));
  return report;
}

VerificationReport run_suite(int max_level, const VerifyOptions &opts) {
  if (max_level < 2)
    throw std::invalid_argument("verification needs N >= 2 so that interior levels exist");
  return run_suite(operators::build_representation(max_level), opts);
}

} // namespace sga::verify
