#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sga/operators.hpp"

#include <cmath>

using namespace sga::operators;

namespace {

const Representation &rep4() {
  static const Representation r = build_representation(4);
  return r;
}

double herm_defect(const OperatorRep &a) { return (a.matrix() - a.matrix().adjoint()).norm(); }

} // namespace

TEST_CASE("f(h) against reference values") {
  // 2 Gamma(5/4)/Gamma(3/4) from 30-digit arithmetic.
  CHECK(f_gamma(1.0) == doctest::Approx(1.47933755959432).epsilon(1e-13));
  // h = 3/2: 2 Gamma(3/2)/Gamma(1) = sqrt(pi).
  CHECK(f_gamma(1.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));
  // h = 2: 2 Gamma(7/4)/Gamma(5/4).
  CHECK(f_gamma(2.0) == doctest::Approx(2.02793472020185).epsilon(1e-13));
}

TEST_CASE("J index bookkeeping") {
  CHECK(j_slot(1, 2) == std::pair<int, int>{0, 1});
  CHECK(j_slot(2, 1) == std::pair<int, int>{0, -1});
  CHECK(j_slot(3, 4) == std::pair<int, int>{5, 1});
  CHECK(j_slot(4, 2) == std::pair<int, int>{4, -1});
  CHECK_THROWS_AS(j_slot(2, 2), std::out_of_range);
  CHECK_THROWS_AS(j_slot(0, 2), std::out_of_range);
  const auto &r = rep4();
  CHECK((j_component(r.J, 3, 1).matrix() + r.J[1].matrix()).norm() == 0.0);
  CHECK(j_component(r.J, 2, 2).matrix().norm() == 0.0);
}

TEST_CASE("OperatorRep construction and block map") {
  const auto &r = rep4();
  CHECK_THROWS_AS(OperatorRep(r.space, Matrix::Zero(3, 3)), std::invalid_argument);
  CHECK_THROWS_AS(OperatorRep(nullptr, Matrix::Zero(1, 1)), std::invalid_argument);
  for (const auto &j : r.J) {
    CHECK(j.hermitian());
    CHECK(j.max_level_shift() == 0);
  }
  for (int i = 0; i < 4; ++i) {
    CHECK(r.X[i].hermitian());
    CHECK(r.P[i].hermitian());
    CHECK(r.ladder.K[i].hermitian());
    CHECK(r.ladder.L[i].hermitian());
    CHECK(r.X[i].max_level_shift() == 1);
    CHECK(r.ladder.Aplus[i].max_level_shift() == 1);
    // X couples level n only to n +- 1.
    for (int from = 0; from <= 4; ++from)
      for (int to : r.X[i].blocks()[from])
        CHECK(std::abs(to - from) == 1);
  }
  CHECK(r.ham.h.hermitian());
  CHECK(herm_defect(r.ham.H) < 1e-12);
}

TEST_CASE("H is diagonal on levels with eigenvalue n(n+2)") {
  const auto &r = rep4();
  const auto &s = *r.space;
  for (int n = 0; n <= 4; ++n) {
    const Matrix b = r.ham.H.block(n, n);
    const Matrix want = Matrix::Identity(s.level_size(n), s.level_size(n)) * double(n * (n + 2));
    CHECK((b - want).norm() < 1e-10);
    const Matrix hb = r.ham.h.block(n, n);
    CHECK((hb - Matrix::Identity(s.level_size(n), s.level_size(n)) * double(n + 1)).norm() < 1e-10);
  }
}

TEST_CASE("X on the ground state") {
  // |x_1 psi_0|^2 = (pi^2/2) / (2 pi^2) = 1/4, all of it on level 1.
  const auto &r = rep4();
  for (int i = 0; i < 4; ++i) {
    const Eigen::VectorXcd v = r.X[i].matrix().col(0);
    CHECK(v.norm() == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(v.segment(1, 4).norm() == doctest::Approx(0.5).epsilon(1e-13));
  }
}

TEST_CASE("raising twice from the ground state") {
  // From level n to n+1, A+ acts as 2 sqrt((n+1)(n+2)) times the raising
  // part of X. So A+_2 psi_0 = 2 sqrt(2) x_2 / sqrt(2 pi^2) = 2 x_2 / pi and
  // A+_1 of that is 2 sqrt(6) * 2 x_1 x_2 / pi.
  const auto &r = rep4();
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(r.space->dim());
  v[0] = 1.0;
  v = r.ladder.Aplus[1].matrix() * v;
  v = r.ladder.Aplus[0].matrix() * v;
  const auto poly = r.space->polynomial(v, 2);
  CHECK(std::abs(poly.coeff({1, 1, 0, 0}) - std::complex<double>(4.0 * std::sqrt(6.0) / M_PI)) <
        1e-12);
  CHECK(poly.terms().size() == 1);
}

TEST_CASE("hermitian_function on a diagonal operator") {
  const auto &r = rep4();
  const auto sq = hermitian_function(r.ham.h, [](double x) { return x * x; });
  CHECK((sq.matrix() - r.ham.h.matrix() * r.ham.h.matrix()).norm() < 1e-11);
  const auto id = identity(r.space);
  CHECK((commutator(r.ham.h, id).matrix()).norm() == 0.0);
}

TEST_CASE("generator map") {
  const auto &r = rep4();
  CHECK(r.so42.size() == 15);
  const auto gs = to_generator_set(r.so42);
  CHECK(gs.dim() == 55);
  CHECK((gs.K(2) - r.ladder.K[1].matrix()).norm() == 0.0);
  CHECK((gs.L(4) - r.ladder.L[3].matrix()).norm() == 0.0);
  CHECK((gs.h() - r.ham.h.matrix()).norm() == 0.0);
  CHECK((gs.J(2, 4) - r.J[4].matrix()).norm() == 0.0);
}

TEST_CASE("N = 0 is a valid one-dimensional space") {
  const auto r = build_representation(0);
  CHECK(r.space->dim() == 1);
  CHECK(r.ham.H.matrix().norm() == 0.0);
  CHECK(std::abs(r.ham.h.matrix()(0, 0) - 1.0) < 1e-15);
}
