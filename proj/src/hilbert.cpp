#include "sga/hilbert.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace sga::hilbert {

namespace {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

int total(const MultiIndex &m) { return m[0] + m[1] + m[2] + m[3]; }

// Gamma((a+1)/2) for a = 0, 1, 2, ...; grown on demand.
double half_gamma(int a) {
  thread_local std::vector<double> table;
  if (static_cast<std::size_t>(a) >= table.size()) {
    const std::size_t old = table.size();
    table.resize(static_cast<std::size_t>(a) + 16);
    for (std::size_t k = old; k < table.size(); ++k)
      table[k] = std::tgamma((static_cast<double>(k) + 1.0) / 2.0);
  }
  return table[static_cast<std::size_t>(a)];
}

} // namespace

Polynomial4::Polynomial4(int degree) : degree_(degree) {
  if (degree < 0)
    throw std::invalid_argument("polynomial degree must be nonnegative");
}

Polynomial4 Polynomial4::constant(Complex value) {
  Polynomial4 p(0);
  p.add_term({0, 0, 0, 0}, value);
  return p;
}

Polynomial4 Polynomial4::coordinate(int i) {
  if (i < 1 || i > 4)
    throw std::out_of_range("coordinate index must be in 1..4");
  MultiIndex m{0, 0, 0, 0};
  m[i - 1] = 1;
  return monomial(m);
}

Polynomial4 Polynomial4::monomial(const MultiIndex &exponents, Complex coeff) {
  Polynomial4 p(total(exponents));
  p.add_term(exponents, coeff);
  return p;
}

Complex Polynomial4::coeff(const MultiIndex &m) const {
  const auto it = terms_.find(m);
  return it == terms_.end() ? Complex{} : it->second;
}

void Polynomial4::add_term(const MultiIndex &m, Complex c) {
  if (total(m) != degree_ || m[0] < 0 || m[1] < 0 || m[2] < 0 || m[3] < 0)
    throw std::invalid_argument("monomial does not match polynomial degree");
  if (c == Complex{})
    return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex{})
      terms_.erase(it);
  }
}

Polynomial4 &Polynomial4::operator+=(const Polynomial4 &o) {
  if (o.is_zero())
    return *this;
  if (is_zero())
    degree_ = o.degree_;
  for (const auto &[m, c] : o.terms_)
    add_term(m, c);
  return *this;
}

Polynomial4 &Polynomial4::operator-=(const Polynomial4 &o) { return *this += Complex(-1.0) * o; }

Polynomial4 &Polynomial4::operator*=(Complex s) {
  if (s == Complex{}) {
    terms_.clear();
    return *this;
  }
  for (auto &[m, c] : terms_)
    c *= s;
  return *this;
}

Polynomial4 Polynomial4::times_coordinate(int i) const {
  Polynomial4 out(degree_ + 1);
  for (const auto &[key, c] : terms_) {
    MultiIndex m = key;
    m[i - 1] += 1;
    out.add_term(m, c);
  }
  return out;
}

Polynomial4 Polynomial4::derivative(int i) const {
  Polynomial4 out(degree_ > 0 ? degree_ - 1 : 0);
  for (const auto &[key, c] : terms_) {
    MultiIndex m = key;
    const int e = m[i - 1];
    if (e == 0)
      continue;
    m[i - 1] = e - 1;
    out.add_term(m, c * static_cast<double>(e));
  }
  return out;
}

double Polynomial4::max_abs() const {
  double m = 0.0;
  for (const auto &[k, c] : terms_)
    m = std::max(m, std::abs(c));
  return m;
}

std::string Polynomial4::to_string() const {
  if (is_zero())
    return "0";
  std::ostringstream os;
  os.precision(12);
  bool first = true;
  for (const auto &[m, c] : terms_) {
    if (!first)
      os << " + ";
    first = false;
    if (c.imag() == 0.0)
      os << c.real();
    else
      os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    for (int k = 0; k < 4; ++k) {
      if (m[k] == 0)
        continue;
      os << "*x" << (k + 1);
      if (m[k] > 1)
        os << "^" << m[k];
    }
  }
  return os.str();
}

Polynomial4 laplacian(const Polynomial4 &p) {
  Polynomial4 out(p.degree() >= 2 ? p.degree() - 2 : 0);
  for (const auto &[m, c] : p.terms()) {
    for (int k = 0; k < 4; ++k) {
      const int e = m[k];
      if (e < 2)
        continue;
      MultiIndex d = m;
      d[k] -= 2;
      out.add_term(d, c * static_cast<double>(e * (e - 1)));
    }
  }
  return out;
}

double monomial_sphere_integral(const MultiIndex &a) {
  for (const int e : a)
    if (e % 2 != 0)
      return 0.0;
  // 2 prod Gamma(b_i) / Gamma(sum b_i) with b_i = (a_i + 1)/2, and
  // sum b_i = (|a| + 4)/2 = Gamma((|a| + 3 + 1)/2).
  double num = 2.0;
  for (const int e : a)
    num *= half_gamma(e);
  return num / half_gamma(total(a) + 3);
}

Complex sphere_integral(const Polynomial4 &p) {
  Complex acc{};
  for (const auto &[m, c] : p.terms())
    acc += c * monomial_sphere_integral(m);
  return acc;
}

Complex inner_product(const Polynomial4 &p, const Polynomial4 &q) {
  Complex acc{};
  for (const auto &[mp, cp] : p.terms()) {
    const Complex cpc = std::conj(cp);
    for (const auto &[mq, cq] : q.terms()) {
      const MultiIndex s{mp[0] + mq[0], mp[1] + mq[1], mp[2] + mq[2], mp[3] + mq[3]};
      const double w = monomial_sphere_integral(s);
      if (w != 0.0)
        acc += cpc * cq * w;
    }
  }
  return acc;
}

std::vector<MultiIndex> monomials_of_degree(int n) {
  std::vector<MultiIndex> out;
  for (int a = n; a >= 0; --a)
    for (int b = n - a; b >= 0; --b)
      for (int c = n - a - b; c >= 0; --c)
        out.push_back({a, b, c, n - a - b - c});
  return out;
}

std::vector<Polynomial4> harmonic_basis(int n) {
  if (n < 0)
    throw std::invalid_argument("harmonic_basis requires n >= 0");
  const auto cols = monomials_of_degree(n);
  if (n < 2) {
    std::vector<Polynomial4> out;
    for (const auto &m : cols)
      out.push_back(Polynomial4::monomial(m));
    return out;
  }
  const auto rows = monomials_of_degree(n - 2);
  std::map<MultiIndex, std::size_t> row_of;
  for (std::size_t r = 0; r < rows.size(); ++r)
    row_of[rows[r]] = r;

  // Laplacian as an exact integer matrix on the monomial basis.
  std::vector<std::vector<Rational>> a(rows.size(), std::vector<Rational>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (int k = 0; k < 4; ++k) {
      const int e = cols[c][k];
      if (e < 2)
        continue;
      MultiIndex d = cols[c];
      d[k] -= 2;
      a[row_of.at(d)][c] += e * (e - 1);
    }

  // Reduced row echelon form over Q.
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols.size() && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && a[p][c] == 0)
      ++p;
    if (p == rows.size())
      continue;
    std::swap(a[p], a[r]);
    const Rational inv = 1 / a[r][c];
    for (auto &v : a[r])
      v *= inv;
    for (std::size_t q = 0; q < rows.size(); ++q) {
      if (q == r || a[q][c] == 0)
        continue;
      const Rational f = a[q][c];
      for (std::size_t k = c; k < cols.size(); ++k)
        a[q][k] -= f * a[r][k];
    }
    pivot_col.push_back(c);
    ++r;
  }

  std::vector<bool> is_pivot(cols.size(), false);
  for (const auto c : pivot_col)
    is_pivot[c] = true;

  std::vector<Polynomial4> out;
  for (std::size_t f = 0; f < cols.size(); ++f) {
    if (is_pivot[f])
      continue;
    std::vector<Rational> v(cols.size());
    v[f] = 1;
    for (std::size_t q = 0; q < pivot_col.size(); ++q)
      v[pivot_col[q]] = -a[q][f];
    // Clear denominators so the coefficients are integers.
    BigInt lcm = 1;
    for (const auto &x : v)
      if (x != 0)
        lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(x));
    Polynomial4 p(n);
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (v[c] == 0)
        continue;
      const BigInt z = boost::multiprecision::numerator(Rational(v[c] * lcm));
      if (boost::multiprecision::abs(z) > (BigInt(1) << 53))
        throw std::overflow_error("harmonic basis coefficient exceeds exact double range");
      p.add_term(cols[c], static_cast<double>(z));
    }
    out.push_back(std::move(p));
  }
  return out;
}

TruncatedSpace::TruncatedSpace(int max_level, std::vector<std::vector<Polynomial4>> levels)
    : max_level_(max_level), levels_(std::move(levels)) {
  if (max_level < 0 || levels_.size() != static_cast<std::size_t>(max_level) + 1)
    throw std::invalid_argument("TruncatedSpace needs one basis list per level 0..N");
  for (int n = 0; n <= max_level; ++n) {
    if (static_cast<Eigen::Index>(levels_[n].size()) != level_size(n))
      throw std::invalid_argument("level " + std::to_string(n) + " must have (n+1)^2 elements");
    offsets_.push_back(dim_);
    dim_ += level_size(n);
  }
}

Eigen::Index TruncatedSpace::dim_through(int n) const {
  if (n < 0)
    return 0;
  n = std::min(n, max_level_);
  return offset(n) + level_size(n);
}

int TruncatedSpace::level_of(Eigen::Index k) const {
  for (int n = max_level_; n >= 0; --n)
    if (k >= offset(n))
      return n;
  throw std::out_of_range("basis index out of range");
}

const Polynomial4 &TruncatedSpace::basis(Eigen::Index k) const {
  const int n = level_of(k);
  return levels_[n].at(static_cast<std::size_t>(k - offset(n)));
}

Eigen::VectorXcd TruncatedSpace::coordinates(const Polynomial4 &p, int n) const {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim_);
  if (n < 0 || n > max_level_)
    return v;
  const auto &lvl = level(n);
  for (std::size_t k = 0; k < lvl.size(); ++k)
    v[offset(n) + static_cast<Eigen::Index>(k)] = inner_product(lvl[k], p);
  return v;
}

Polynomial4 TruncatedSpace::polynomial(const Eigen::VectorXcd &v, int n) const {
  Polynomial4 out(n);
  const auto &lvl = level(n);
  for (std::size_t k = 0; k < lvl.size(); ++k)
    out += v[offset(n) + static_cast<Eigen::Index>(k)] * lvl[k];
  return out;
}

Eigen::MatrixXcd gram_matrix(const std::vector<Polynomial4> &basis) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) {
      g(i, j) = inner_product(basis[i], basis[j]);
      g(j, i) = std::conj(g(i, j));
    }
  return g;
}

TruncatedSpace orthonormalize(int max_level) {
  if (max_level < 0)
    throw std::invalid_argument("max level must be >= 0");
  std::vector<std::vector<Polynomial4>> levels;
  for (int n = 0; n <= max_level; ++n) {
    const auto raw = harmonic_basis(n);
    const Eigen::MatrixXcd g = gram_matrix(raw);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("Gram eigensolver failed at level " + std::to_string(n));
    const auto &ev = es.eigenvalues();
    if (ev.minCoeff() <= 1e-13 * ev.maxCoeff())
      throw std::runtime_error("Gram matrix numerically singular at level " + std::to_string(n));
    const Eigen::MatrixXcd w = es.eigenvectors() *
                               ev.cwiseSqrt().cwiseInverse().asDiagonal() *
                               es.eigenvectors().adjoint();
    std::vector<Polynomial4> ortho;
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
      Polynomial4 e(n);
      for (Eigen::Index i = 0; i < w.rows(); ++i)
        e += w(i, j) * raw[static_cast<std::size_t>(i)];
      ortho.push_back(std::move(e));
    }
    levels.push_back(std::move(ortho));
  }
  return TruncatedSpace(max_level, std::move(levels));
}

Eigen::Index truncated_dimension(int max_level) {
  Eigen::Index d = 0;
  for (int n = 0; n <= max_level; ++n)
    d += static_cast<Eigen::Index>(n + 1) * (n + 1);
  return d;
}

std::string basis_to_json(const TruncatedSpace &space) {
  nlohmann::ordered_json doc;
  doc["max_level"] = space.max_level();
  auto levels = nlohmann::ordered_json::array();
  for (int n = 0; n <= space.max_level(); ++n) {
    auto level = nlohmann::ordered_json::array();
    for (const auto &p : space.level(n)) {
      auto terms = nlohmann::ordered_json::array();
      for (const auto &[m, c] : p.terms())
        terms.push_back({m, c.real(), c.imag()});
      level.push_back(std::move(terms));
    }
    levels.push_back(std::move(level));
  }
  doc["levels"] = std::move(levels);
  return doc.dump();
}

} // namespace sga::hilbert
