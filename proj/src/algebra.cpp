#include "sga/algebra.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace sga::algebra {

namespace {

// Flat position of (a, b), a < b, in the lexicographic list of 15 pairs.
constexpr int flat_of(int a, int b) {
  int k = 0;
  for (int x = 1; x <= 6; ++x)
    for (int y = x + 1; y <= 6; ++y) {
      if (x == a && y == b)
        return k;
      ++k;
    }
  return -1;
}

int permutation_sign(std::array<int, 6> p) {
  int sign = 1;
  for (int i = 0; i < 6; ++i) {
    while (p[i] != i + 1) {
      const int j = p[i] - 1;
      if (j < 0 || j > 5 || p[j] == p[i])
        return 0;
      std::swap(p[i], p[j]);
      sign = -sign;
    }
  }
  return sign;
}

Matrix anticomm(const Matrix &a, const Matrix &b) { return a * b + b * a; }

} // namespace

GeneratorIndex::GeneratorIndex(int a, int b) : a_(a), b_(b) {
  if (a < 1 || b > 6 || a >= b)
    throw std::invalid_argument("generator index requires 1 <= a < b <= 6, got (" +
                                std::to_string(a) + "," + std::to_string(b) + ")");
}

int GeneratorIndex::flat() const { return flat_of(a_, b_); }

GeneratorIndex GeneratorIndex::from_flat(int k) { return all().at(static_cast<std::size_t>(k)); }

const std::array<GeneratorIndex, 15> &GeneratorIndex::all() {
  static const std::array<GeneratorIndex, 15> table = [] {
    std::array<GeneratorIndex, 15> out{
        GeneratorIndex(1, 2), GeneratorIndex(1, 3), GeneratorIndex(1, 4), GeneratorIndex(1, 5),
        GeneratorIndex(1, 6), GeneratorIndex(2, 3), GeneratorIndex(2, 4), GeneratorIndex(2, 5),
        GeneratorIndex(2, 6), GeneratorIndex(3, 4), GeneratorIndex(3, 5), GeneratorIndex(3, 6),
        GeneratorIndex(4, 5), GeneratorIndex(4, 6), GeneratorIndex(5, 6)};
    return out;
  }();
  return table;
}

std::string GeneratorIndex::name() const {
  return "M" + std::to_string(a_) + std::to_string(b_);
}

int levi_civita6(const std::array<int, 6> &idx) { return permutation_sign(idx); }

int levi_civita4(int i, int j, int k, int l) {
  return permutation_sign({i, j, k, l, 5, 6});
}

void LinearCombo::add(int a, int b, Gaussian coeff) {
  if (a == b || coeff.is_zero())
    return;
  if (a > b) {
    std::swap(a, b);
    coeff = coeff * Gaussian{-1, 0};
  }
  const GeneratorIndex g(a, b);
  auto &slot = terms[g];
  slot += coeff;
  if (slot.is_zero())
    terms.erase(g);
}

void LinearCombo::add(const LinearCombo &other, Gaussian factor) {
  for (const auto &[g, c] : other.terms)
    add(g.a(), g.b(), c * factor);
  scalar += other.scalar * factor;
}

bool LinearCombo::is_zero() const { return terms.empty() && scalar.is_zero(); }

std::int64_t LinearCombo::max_abs() const {
  auto mag = [](const Gaussian &z) -> std::int64_t { return (z.re < 0 ? -z.re : z.re) + (z.im < 0 ? -z.im : z.im); };
  std::int64_t m = mag(scalar);
  for (const auto &[g, c] : terms)
    m = std::max(m, mag(c));
  return m;
}

LinearCombo commutator_rhs(GeneratorIndex ab, GeneratorIndex cd, BracketMode mode) {
  const int a = ab.a(), b = ab.b(), c = cd.a(), d = cd.b();
  // Classical bracket: g_ad M_bc + g_bc M_ad - g_ac M_bd - g_bd M_ac.
  // The quantum commutator is -i times the same combination.
  const Gaussian unit = mode == BracketMode::Quantum ? Gaussian{0, -1} : Gaussian{1, 0};
  auto g = [&](int x, int y) { return Gaussian{metric(x, y), 0} * unit; };
  LinearCombo out;
  out.add(b, c, g(a, d));
  out.add(a, d, g(b, c));
  out.add(b, d, g(a, c) * Gaussian{-1, 0});
  out.add(a, c, g(b, d) * Gaussian{-1, 0});
  return out;
}

LinearCombo commutator_rhs(const LinearCombo &lhs, GeneratorIndex cd, BracketMode mode) {
  LinearCombo out;
  for (const auto &[g, c] : lhs.terms)
    out.add(commutator_rhs(g, cd, mode), c);
  return out;
}

std::vector<Triple> all_triples() {
  const auto &gens = GeneratorIndex::all();
  std::vector<Triple> out;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      for (std::size_t k = j + 1; k < gens.size(); ++k)
        out.push_back({gens[i], gens[j], gens[k]});
  return out;
}

std::int64_t jacobi_residual(const std::vector<Triple> &sample, BracketMode mode) {
  std::int64_t worst = 0;
  for (const auto &[x, y, z] : sample) {
    LinearCombo sum;
    sum.add(commutator_rhs(commutator_rhs(x, y, mode), z, mode));
    sum.add(commutator_rhs(commutator_rhs(y, z, mode), x, mode));
    sum.add(commutator_rhs(commutator_rhs(z, x, mode), y, mode));
    worst = std::max(worst, sum.max_abs());
  }
  return worst;
}

GeneratorSet::GeneratorSet(std::array<Matrix, 15> ops) : ops_(std::move(ops)) {
  dim_ = ops_[0].rows();
  for (const auto &m : ops_)
    if (m.rows() != dim_ || m.cols() != dim_)
      throw std::invalid_argument("generator matrices must be square and share one dimension");
}

Matrix GeneratorSet::M(int a, int b) const {
  if (a == b)
    return Matrix::Zero(dim_, dim_);
  if (a < b)
    return ops_[GeneratorIndex(a, b).flat()];
  return -ops_[GeneratorIndex(b, a).flat()];
}

Matrix GeneratorSet::evaluate(const LinearCombo &combo) const {
  Matrix out = combo.scalar.to_complex() * Matrix::Identity(dim_, dim_);
  for (const auto &[g, c] : combo.terms)
    out += c.to_complex() * (*this)[g];
  return out;
}

Tensor6 tensor_T(const GeneratorSet &ops, double c) {
  const auto n = ops.dim();
  Tensor6 t;
  for (int a = 1; a <= 6; ++a)
    for (int b = a; b <= 6; ++b) {
      Matrix acc = c * metric(a, b) * Matrix::Identity(n, n);
      for (int d = 1; d <= 6; ++d) {
        if (d == a || d == b)
          continue;
        acc += static_cast<double>(metric(d)) * anticomm(ops.M(a, d), ops.M(b, d));
      }
      t[a - 1][b - 1] = acc;
      t[b - 1][a - 1] = acc;
    }
  return t;
}

Tensor6 tensor_R(const GeneratorSet &ops) {
  const auto n = ops.dim();
  Tensor6 r;
  for (int a = 0; a < 6; ++a)
    r[a][a] = Matrix::Zero(n, n);
  for (int a = 1; a <= 6; ++a)
    for (int b = a + 1; b <= 6; ++b) {
      Matrix acc = Matrix::Zero(n, n);
      // Each unordered split {cd},{ef} of the remaining labels occurs with
      // the same sign in all four orderings inside the pairs, so summing
      // over c<d, e<f and multiplying by 4 reproduces the full contraction.
      for (int c = 1; c <= 6; ++c)
        for (int d = c + 1; d <= 6; ++d)
          for (int e = 1; e <= 6; ++e)
            for (int f = e + 1; f <= 6; ++f) {
              const int s = levi_civita6({a, b, c, d, e, f});
              if (s == 0)
                continue;
              acc += static_cast<double>(4 * s) * anticomm(ops.M(c, d), ops.M(e, f));
            }
      r[a - 1][b - 1] = acc;
      r[b - 1][a - 1] = -acc;
    }
  return r;
}

Tensor6 tensor_T_components(const GeneratorSet &ops, double c) {
  const auto n = ops.dim();
  const Matrix id = Matrix::Identity(n, n);
  const Matrix &h = ops.h();
  Tensor6 t;
  auto put = [&](int a, int b, const Matrix &m) {
    t[a - 1][b - 1] = m;
    t[b - 1][a - 1] = m;
  };
  for (int i = 1; i <= 4; ++i) {
    for (int j = i; j <= 4; ++j) {
      Matrix m = c * metric(i, j) * id;
      for (int k = 1; k <= 4; ++k)
        m += anticomm(ops.J(i, k), ops.J(j, k));
      m -= anticomm(ops.K(i), ops.K(j)) + anticomm(ops.L(i), ops.L(j));
      put(i, j, m);
    }
    Matrix t5 = -anticomm(h, ops.L(i));
    Matrix t6 = anticomm(h, ops.K(i));
    for (int j = 1; j <= 4; ++j) {
      t5 -= anticomm(ops.J(i, j), ops.K(j));
      t6 -= anticomm(ops.J(i, j), ops.L(j));
    }
    put(5, i, t5);
    put(6, i, t6);
  }
  Matrix t56 = Matrix::Zero(n, n);
  Matrix k2 = Matrix::Zero(n, n);
  Matrix l2 = Matrix::Zero(n, n);
  for (int i = 1; i <= 4; ++i) {
    t56 += anticomm(ops.K(i), ops.L(i));
    k2 += ops.K(i) * ops.K(i);
    l2 += ops.L(i) * ops.L(i);
  }
  put(5, 6, t56);
  put(5, 5, 2.0 * (k2 - h * h) - c * id);
  put(6, 6, 2.0 * (l2 - h * h) - c * id);
  return t;
}

Tensor6 tensor_R_components(const GeneratorSet &ops) {
  const auto n = ops.dim();
  const Matrix &h = ops.h();
  Tensor6 r;
  for (int a = 0; a < 6; ++a)
    r[a][a] = Matrix::Zero(n, n);
  auto put = [&](int a, int b, const Matrix &m) {
    r[a - 1][b - 1] = m;
    r[b - 1][a - 1] = -m;
  };

  std::array<std::array<Matrix, 4>, 4> q;
  for (int k = 1; k <= 4; ++k)
    for (int l = 1; l <= 4; ++l)
      q[k - 1][l - 1] = anticomm(ops.K(k), ops.L(l)) - anticomm(ops.L(k), ops.K(l)) -
                        anticomm(ops.J(k, l), h);

  for (int i = 1; i <= 4; ++i) {
    for (int j = i + 1; j <= 4; ++j) {
      Matrix m = Matrix::Zero(n, n);
      for (int k = 1; k <= 4; ++k)
        for (int l = 1; l <= 4; ++l)
          if (const int s = levi_civita4(i, j, k, l))
            m -= 4.0 * s * q[k - 1][l - 1];
      put(i, j, m);
    }
    Matrix r5 = Matrix::Zero(n, n);
    Matrix r6 = Matrix::Zero(n, n);
    for (int j = 1; j <= 4; ++j)
      for (int k = 1; k <= 4; ++k)
        for (int l = 1; l <= 4; ++l)
          if (const int s = levi_civita4(i, j, k, l)) {
            r5 += 4.0 * s * anticomm(ops.L(j), ops.J(k, l));
            r6 -= 4.0 * s * anticomm(ops.K(j), ops.J(k, l));
          }
    put(5, i, r5);
    put(6, i, r6);
  }
  Matrix r56 = Matrix::Zero(n, n);
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j)
      for (int k = 1; k <= 4; ++k)
        for (int l = 1; l <= 4; ++l)
          if (const int s = levi_civita4(i, j, k, l))
            r56 += 2.0 * s * ops.J(i, j) * ops.J(k, l);
  put(5, 6, r56);
  return r;
}

} // namespace sga::algebra
