#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <map>
#include <string>
#include <vector>

namespace sga::hilbert {

using Complex = std::complex<double>;
using MultiIndex = std::array<int, 4>;

/// Homogeneous polynomial in x1..x4 with complex coefficients.
///
/// Every stored monomial has total degree degree(); zero coefficients are
/// never stored, so the zero polynomial of any degree has no terms.
class Polynomial4 {
public:
  explicit Polynomial4(int degree = 0);

  /// Constant polynomial.
  static Polynomial4 constant(Complex value);
  /// The coordinate x_i, i in 1..4.
  static Polynomial4 coordinate(int i);
  static Polynomial4 monomial(const MultiIndex &exponents, Complex coeff = 1.0);

  int degree() const { return degree_; }
  const std::map<MultiIndex, Complex> &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Complex coeff(const MultiIndex &m) const;

  /// Adds coeff * x^m. Throws std::invalid_argument if |m| != degree().
  void add_term(const MultiIndex &m, Complex coeff);

  Polynomial4 &operator+=(const Polynomial4 &o);
  Polynomial4 &operator-=(const Polynomial4 &o);
  Polynomial4 &operator*=(Complex s);
  friend Polynomial4 operator+(Polynomial4 a, const Polynomial4 &b) { return a += b; }
  friend Polynomial4 operator-(Polynomial4 a, const Polynomial4 &b) { return a -= b; }
  friend Polynomial4 operator*(Complex s, Polynomial4 p) { return p *= s; }

  /// Multiplication by x_i (degree + 1).
  Polynomial4 times_coordinate(int i) const;
  /// Partial derivative d/dx_i (degree - 1; zero if degree is 0).
  Polynomial4 derivative(int i) const;

  /// Largest coefficient modulus (0 for the zero polynomial).
  double max_abs() const;

  std::string to_string() const;

private:
  int degree_;
  std::map<MultiIndex, Complex> terms_;
};

Polynomial4 laplacian(const Polynomial4 &p);

/// Integral of x^a over the unit three-sphere with its round measure.
double monomial_sphere_integral(const MultiIndex &a);

/// Integral of p over the unit three-sphere.
Complex sphere_integral(const Polynomial4 &p);

/// <p, q> = integral of conj(p) q over the unit three-sphere.
Complex inner_product(const Polynomial4 &p, const Polynomial4 &q);

/// All exponent tuples of total degree n, in lexicographic order.
std::vector<MultiIndex> monomials_of_degree(int n);

/// A basis of the degree-n harmonic polynomials with integer coefficients.
/// Size is (n+1)^2. Not orthonormal.
std::vector<Polynomial4> harmonic_basis(int n);

/// Orthonormal harmonic bases for levels 0..N of L^2(S^3).
///
/// Basis vectors are ordered by level; level n occupies the index range
/// [offset(n), offset(n) + (n+1)^2).
class TruncatedSpace {
public:
  TruncatedSpace(int max_level, std::vector<std::vector<Polynomial4>> levels);

  int max_level() const { return max_level_; }
  Eigen::Index dim() const { return dim_; }
  Eigen::Index offset(int n) const { return offsets_.at(static_cast<std::size_t>(n)); }
  Eigen::Index level_size(int n) const { return static_cast<Eigen::Index>(n + 1) * (n + 1); }
  /// Number of basis vectors belonging to levels 0..n.
  Eigen::Index dim_through(int n) const;
  int level_of(Eigen::Index k) const;

  const std::vector<Polynomial4> &level(int n) const {
    return levels_.at(static_cast<std::size_t>(n));
  }
  const Polynomial4 &basis(Eigen::Index k) const;

  /// Coordinates of a polynomial in the orthonormal basis of level n.
  Eigen::VectorXcd coordinates(const Polynomial4 &p, int n) const;
  /// Polynomial sum_k v_k e_k over the basis vectors of level n; components
  /// of v outside level n are ignored.
  Polynomial4 polynomial(const Eigen::VectorXcd &v, int n) const;

private:
  int max_level_;
  std::vector<std::vector<Polynomial4>> levels_;
  std::vector<Eigen::Index> offsets_;
  Eigen::Index dim_ = 0;
};

/// Gram matrix <b_i, b_j> of a list of polynomials.
Eigen::MatrixXcd gram_matrix(const std::vector<Polynomial4> &basis);

/// Builds the orthonormal truncated space via G^{-1/2} on each level.
/// Throws std::runtime_error if a Gram matrix is numerically singular.
TruncatedSpace orthonormalize(int max_level);

/// Total dimension sum_{n<=N} (n+1)^2.
Eigen::Index truncated_dimension(int max_level);

/// JSON export: {"max_level": N, "levels": [[[[a1,a2,a3,a4], re, im], ...], ...]}.
std::string basis_to_json(const TruncatedSpace &space);

} // namespace sga::hilbert
