#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sga/hilbert.hpp"

#include <cmath>

using namespace sga::hilbert;

namespace {
const double pi2 = M_PI * M_PI;
}

TEST_CASE("sphere integrals of monomials") {
  // Reference values from symbolic integration in hyperspherical coordinates.
  CHECK(monomial_sphere_integral({0, 0, 0, 0}) == doctest::Approx(2 * pi2).epsilon(1e-14));
  CHECK(monomial_sphere_integral({2, 0, 0, 0}) == doctest::Approx(pi2 / 2).epsilon(1e-14));
  CHECK(monomial_sphere_integral({0, 0, 2, 0}) == doctest::Approx(pi2 / 2).epsilon(1e-14));
  CHECK(monomial_sphere_integral({2, 2, 0, 0}) == doctest::Approx(pi2 / 12).epsilon(1e-14));
  CHECK(monomial_sphere_integral({4, 0, 0, 0}) == doctest::Approx(pi2 / 4).epsilon(1e-14));
  CHECK(monomial_sphere_integral({2, 2, 2, 0}) == doctest::Approx(pi2 / 96).epsilon(1e-14));
  CHECK(monomial_sphere_integral({1, 0, 0, 0}) == 0.0);
  CHECK(monomial_sphere_integral({1, 1, 0, 0}) == 0.0);
  CHECK(monomial_sphere_integral({3, 1, 2, 0}) == 0.0);
}

TEST_CASE("polynomial arithmetic") {
  const auto x1 = Polynomial4::coordinate(1);
  const auto x2 = Polynomial4::coordinate(2);
  const auto p = x1.times_coordinate(1) - x2.times_coordinate(2); // x1^2 - x2^2
  CHECK(p.degree() == 2);
  CHECK(p.coeff({2, 0, 0, 0}) == Complex(1.0));
  CHECK(p.coeff({0, 2, 0, 0}) == Complex(-1.0));
  CHECK(laplacian(p).is_zero());
  CHECK(laplacian(x1.times_coordinate(1)).coeff({0, 0, 0, 0}) == Complex(2.0));
  CHECK(p.derivative(1).coeff({1, 0, 0, 0}) == Complex(2.0));
  CHECK(Polynomial4::constant(3.0).derivative(2).is_zero());
  CHECK((p - p).is_zero());
  Polynomial4 q(2);
  CHECK_THROWS_AS(q.add_term({1, 0, 0, 0}, 1.0), std::invalid_argument);
  auto x1sq = x1.times_coordinate(1);
  CHECK_THROWS_AS(x1sq += x1, std::invalid_argument);
  // The zero polynomial takes the degree of what is added to it.
  q += x1;
  CHECK(q.degree() == 1);
}

TEST_CASE("inner product conjugates the first argument") {
  const auto x1 = Polynomial4::coordinate(1);
  const Complex i{0.0, 1.0};
  const auto ix1 = i * x1;
  CHECK(std::abs(inner_product(ix1, x1) - (-i * pi2 / 2.0)) < 1e-14);
  CHECK(std::abs(inner_product(x1, ix1) - (i * pi2 / 2.0)) < 1e-14);
}

TEST_CASE("harmonic bases have the expected dimensions") {
  for (int n = 0; n <= 6; ++n) {
    const auto basis = harmonic_basis(n);
    CHECK(basis.size() == static_cast<std::size_t>((n + 1) * (n + 1)));
    for (const auto &p : basis) {
      CHECK(p.degree() == n);
      CHECK(laplacian(p).is_zero());
      // Integer coefficients.
      for (const auto &[m, c] : p.terms()) {
        CHECK(c.imag() == 0.0);
        CHECK(c.real() == std::round(c.real()));
      }
    }
  }
  CHECK(monomials_of_degree(3).size() == 20);
}

TEST_CASE("truncated space layout") {
  CHECK(truncated_dimension(0) == 1);
  CHECK(truncated_dimension(3) == 30);
  CHECK(truncated_dimension(6) == 140);
  const auto s = orthonormalize(3);
  CHECK(s.dim() == 30);
  CHECK(s.offset(2) == 5);
  CHECK(s.level_size(3) == 16);
  CHECK(s.dim_through(1) == 5);
  CHECK(s.dim_through(-1) == 0);
  CHECK(s.level_of(0) == 0);
  CHECK(s.level_of(4) == 1);
  CHECK(s.level_of(29) == 3);
}

TEST_CASE("orthonormal basis: Gram matrix is the identity across levels") {
  const auto s = orthonormalize(4);
  std::vector<Polynomial4> all;
  for (Eigen::Index k = 0; k < s.dim(); ++k)
    all.push_back(s.basis(k));
  // Different degrees are orthogonal on the sphere, so the full Gram matrix
  // with mixed degrees is computed pairwise.
  double worst = 0.0;
  for (std::size_t a = 0; a < all.size(); ++a)
    for (std::size_t b = 0; b < all.size(); ++b) {
      Complex ip = 0.0;
      if (all[a].degree() == all[b].degree())
        ip = inner_product(all[a], all[b]);
      worst = std::max(worst, std::abs(ip - (a == b ? 1.0 : 0.0)));
    }
  CHECK(worst < 1e-12);
  // The level-0 state is the normalized constant 1/sqrt(2 pi^2).
  CHECK(std::abs(std::abs(s.basis(0).coeff({0, 0, 0, 0})) - 1.0 / std::sqrt(2 * pi2)) < 1e-14);
}

TEST_CASE("coordinates and polynomial round trip") {
  const auto s = orthonormalize(3);
  const auto x1 = Polynomial4::coordinate(1);
  const auto x2 = Polynomial4::coordinate(2);
  const auto p = x1.times_coordinate(2) + x2.times_coordinate(2) - x1.times_coordinate(1);
  // x1 x2 + x2^2 - x1^2 is harmonic and lives on level 2.
  const auto v = s.coordinates(p, 2);
  const auto back = s.polynomial(v, 2);
  CHECK((back - p).max_abs() < 1e-12);
  CHECK(s.coordinates(p, 7).norm() == 0.0);
  // The norm is preserved: |p|^2 = 3 * pi^2/12 * ... computed directly.
  CHECK(std::abs(v.squaredNorm() - inner_product(p, p).real()) < 1e-12);
}

TEST_CASE("basis JSON export") {
  const auto s = orthonormalize(1);
  const auto json = basis_to_json(s);
  CHECK(json.find("\"max_level\":1") != std::string::npos);
  CHECK(json.find("\"levels\"") != std::string::npos);
}
