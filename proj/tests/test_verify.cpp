#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sga/verify.hpp"

#include <cmath>

using namespace sga;
using namespace sga::verify;

namespace {

const operators::Representation &rep4() {
  static const operators::Representation r = operators::build_representation(4);
  return r;
}

bool all_pass(const std::vector<CheckResult> &v) {
  for (const auto &c : v)
    if (!c.pass) {
      MESSAGE(c.name << " residual " << c.residual << " tol " << c.tolerance);
      return false;
    }
  return !v.empty();
}

const CheckResult *find(const std::vector<CheckResult> &v, const std::string &name) {
  for (const auto &c : v)
    if (c.name == name)
      return &c;
  return nullptr;
}

} // namespace

TEST_CASE("residual and interior helpers") {
  Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 2);
  a(0, 0) = 3.0;
  b(0, 0) = 3.0;
  b(1, 1) = 4.0;
  CHECK(relative_residual(a, b, 1) == 0.0);
  CHECK(relative_residual(a, b, 2) == doctest::Approx(4.0 / 5.0));
  Matrix tiny = Matrix::Zero(2, 2);
  tiny(0, 0) = 1e-3;
  CHECK(relative_residual(tiny, Matrix::Zero(2, 2), 2) == doctest::Approx(1e-3));
  CHECK(interior_level(6, 2) == 4);
  CHECK(interior_level(6, 3) == 3);
  CHECK(interior_level(1, 2) == 0);
  const auto r = make_result("x", 1e-11, 1e-10);
  CHECK(r.pass);
  CHECK_FALSE(make_result("x", 2e-10, 1e-10).pass);
  CHECK_FALSE(make_result("x", std::nan(""), 1e-10).pass);
}

TEST_CASE("check groups pass at N = 4") {
  const auto &r = rep4();
  CHECK(all_pass(check_commutators(r)));
  CHECK(check_commutators(r).size() == 105 + 16 + 12 + 12);
  CHECK(all_pass(check_restrictive(r)));
  CHECK(all_pass(check_casimirs(r)));
  CHECK(check_spectrum(r).pass);
  CHECK(all_pass(check_su2(r)));
  CHECK(all_pass(check_position_momentum(r)));
  CHECK(all_pass(check_ladder(r)));
  CHECK(all_pass(check_eigenoperators(r)));
  CHECK(all_pass(check_f_identities(r)));
  CHECK(all_pass(check_eigenstates(r)));
}

TEST_CASE("interior levels are recorded") {
  const auto c = check_commutators(rep4());
  REQUIRE(c.front().levels);
  CHECK(c.front().levels->first == 0);
  CHECK(c.front().levels->second == 2);
  const auto cas = check_casimirs(rep4());
  const auto *c3 = find(cas, "casimir.C3=M_abT^ab/2=0");
  REQUIRE(c3);
  CHECK(c3->levels->second == 1);
}

TEST_CASE("negative control: c = 0 breaks the shifted tensor") {
  VerifyOptions o;
  o.c = 0.0;
  const auto checks = check_restrictive(rep4(), o);
  int failed = 0;
  for (const auto &c : checks)
    if (!c.pass) {
      ++failed;
      CHECK(c.name.rfind("restrictive.T~[", 0) == 0);
    }
  // Only the six diagonal components carry c g_aa.
  CHECK(failed == 6);
  // C2 = -3c is then violated as well, because C2 itself does not depend on c.
  CHECK_FALSE(find(check_casimirs(rep4(), o), "casimir.C2=-3c")->pass);
}

TEST_CASE("a perturbed generator is detected") {
  auto bad = rep4();
  const auto &h = bad.ham.h;
  bad.so42.at(algebra::GeneratorIndex(5, 6)) =
      operators::OperatorRep(h.space_ptr(), 1.001 * h.matrix());
  int failed = 0;
  for (const auto &c : check_commutators(bad))
    failed += c.pass ? 0 : 1;
  CHECK(failed > 0);
}

TEST_CASE("spectrum table at N = 3") {
  const auto r = operators::build_representation(3);
  const auto rows = spectrum_table(r);
  REQUIRE(rows.size() == 4);
  const double E[] = {0, 3, 8, 15};
  const int d[] = {1, 4, 9, 16};
  for (int n = 0; n < 4; ++n) {
    CHECK(rows[n].exact == E[n]);
    CHECK(rows[n].degeneracy == d[n]);
    CHECK(rows[n].measured_multiplicity == d[n]);
    CHECK(rows[n].residual <= 1e-10);
  }
  const auto r0 = spectrum_table(operators::build_representation(0));
  REQUIRE(r0.size() == 1);
  CHECK(r0[0].exact == 0.0);
  CHECK(r0[0].degeneracy == 1);
}

TEST_CASE("f recursion") {
  CHECK(check_f_recursion(20, 1e-12).pass);
  CHECK(check_f_recursion(20, 1e-12).residual < 1e-13);
}

TEST_CASE("eigenstate construction") {
  const auto &r = rep4();
  CHECK_THROWS_AS(build_eigenstate(r, {1, 2, 3, 4}), std::out_of_range);
  CHECK_THROWS_AS(build_eigenstate(r, {0}), std::out_of_range);
  CHECK_THROWS_AS(build_eigenstate(r, {5}), std::out_of_range);
  const auto p0 = build_eigenstate(r, {});
  CHECK(p0.degree() == 0);
  const auto p = build_eigenstate(r, {3, 3});
  CHECK(p.degree() == 2);
  // A+_3 A+_3 psi_0 is proportional to x_3^2 - (x.x)/4, the traceless square.
  const auto c33 = p.coeff({0, 0, 2, 0});
  const auto c11 = p.coeff({2, 0, 0, 0});
  CHECK(std::abs(c11 / c33 + 1.0 / 3.0) < 1e-12);
  CHECK(hilbert::laplacian(p).max_abs() < 1e-12 * p.max_abs());
}

TEST_CASE("spin matrices") {
  const std::complex<double> I{0.0, 1.0};
  for (int two_s : {1, 2, 3}) {
    const auto s = spin_matrices(two_s);
    CHECK((s[0] * s[1] - s[1] * s[0] - I * s[2]).norm() < 1e-14);
    const Matrix cas = s[0] * s[0] + s[1] * s[1] + s[2] * s[2];
    const double j = two_s / 2.0;
    CHECK((cas - j * (j + 1) * Matrix::Identity(two_s + 1, two_s + 1)).norm() < 1e-13);
  }
}

TEST_CASE("SO(3) restriction: spin 1/2 satisfies it, spin 1 does not") {
  const auto half = so3_restrictive(spin_matrices(1));
  for (const auto &row : half)
    for (const auto &m : row)
      CHECK(m.cwiseAbs().maxCoeff() == 0.0);
  const auto one = so3_restrictive(spin_matrices(2));
  CHECK(one[0][0].norm() == doctest::Approx(std::sqrt(19.0) / 2.0).epsilon(1e-14));
  CHECK(one[0][1].norm() > 0.5);
  CHECK(all_pass(so3_demo()));
}

TEST_CASE("run_suite rejects N < 2 and records timings on request") {
  CHECK_THROWS_AS(run_suite(1), std::invalid_argument);
  VerifyOptions o;
  o.timings = true;
  const auto r = run_suite(rep4(), o);
  CHECK(r.pass());
  CHECK(r.failures() == 0);
  CHECK(r.dimension == 55);
  for (const auto &c : r.checks)
    CHECK(c.seconds.has_value());
  const auto plain = run_suite(rep4());
  for (const auto &c : plain.checks)
    CHECK_FALSE(c.seconds.has_value());
}
