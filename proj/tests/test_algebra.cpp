#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sga/algebra.hpp"

#include <random>

using namespace sga::algebra;

namespace {

Gaussian gi(std::int64_t re, std::int64_t im = 0) { return {re, im}; }

LinearCombo single(int a, int b, Gaussian c) {
  LinearCombo out;
  out.add(a, b, c);
  return out;
}

bool same(const LinearCombo &x, const LinearCombo &y) {
  LinearCombo d = x;
  d.add(y, gi(-1));
  return d.is_zero();
}

// Random Hermitian matrices standing in for generators: the contraction
// and component forms of the tensors are polynomial identities and must
// agree for any input.
GeneratorSet random_set(int dim, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> n;
  std::array<Matrix, 15> ops;
  for (auto &m : ops) {
    Matrix a(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        a(i, j) = {n(rng), n(rng)};
    m = a + a.adjoint();
  }
  return GeneratorSet(std::move(ops));
}

} // namespace

TEST_CASE("generator labels") {
  CHECK(GeneratorIndex::all().size() == 15);
  CHECK(GeneratorIndex(1, 2).flat() == 0);
  CHECK(GeneratorIndex(5, 6).flat() == 14);
  for (int k = 0; k < 15; ++k)
    CHECK(GeneratorIndex::from_flat(k).flat() == k);
  CHECK(GeneratorIndex(3, 5).name() == "M35");
  CHECK_THROWS_AS(GeneratorIndex(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(GeneratorIndex(3, 1), std::invalid_argument);
  CHECK_THROWS_AS(GeneratorIndex(0, 4), std::invalid_argument);
  CHECK_THROWS_AS(GeneratorIndex(5, 7), std::invalid_argument);
}

TEST_CASE("metric and epsilon") {
  CHECK(metric(1) == 1);
  CHECK(metric(4) == 1);
  CHECK(metric(5) == -1);
  CHECK(metric(6, 6) == -1);
  CHECK(metric(2, 3) == 0);
  CHECK(levi_civita6({1, 2, 3, 4, 5, 6}) == 1);
  CHECK(levi_civita6({2, 1, 3, 4, 5, 6}) == -1);
  CHECK(levi_civita6({2, 3, 4, 5, 6, 1}) == -1);
  CHECK(levi_civita6({1, 1, 3, 4, 5, 6}) == 0);
  CHECK(levi_civita4(1, 2, 3, 4) == 1);
  CHECK(levi_civita4(2, 3, 4, 1) == -1);
  CHECK(levi_civita4(1, 3, 2, 4) == -1);
  CHECK(levi_civita4(1, 1, 2, 3) == 0);
}

TEST_CASE("structure constants, hand-evaluated") {
  // [M12, M13] = -i(g11 * -M23) = i M23
  CHECK(same(commutator_rhs(GeneratorIndex(1, 2), GeneratorIndex(1, 3)), single(2, 3, gi(0, 1))));
  // [K1, K2] = -i(-g55 M12) with g55 = -1: -i M12
  CHECK(same(commutator_rhs(GeneratorIndex(1, 5), GeneratorIndex(2, 5)), single(1, 2, gi(0, -1))));
  // [K1, L1] = -i(-g11 M56) = i h
  CHECK(same(commutator_rhs(GeneratorIndex(1, 5), GeneratorIndex(1, 6)), single(5, 6, gi(0, 1))));
  // [h, K1] = -i(g55 M61) = -i M16
  CHECK(same(commutator_rhs(GeneratorIndex(5, 6), GeneratorIndex(1, 5)), single(1, 6, gi(0, -1))));
  // Commuting pair.
  CHECK(commutator_rhs(GeneratorIndex(1, 2), GeneratorIndex(3, 4)).is_zero());
  // Classical brackets drop the factor -i.
  CHECK(same(commutator_rhs(GeneratorIndex(1, 2), GeneratorIndex(1, 3), BracketMode::Classical),
             single(2, 3, gi(-1))));
}

TEST_CASE("antisymmetry of the bracket table") {
  const auto &g = GeneratorIndex::all();
  for (const auto &x : g)
    for (const auto &y : g) {
      LinearCombo s = commutator_rhs(x, y);
      s.add(commutator_rhs(y, x));
      CHECK(s.is_zero());
    }
}

TEST_CASE("Jacobi identity over all triples") {
  const auto triples = all_triples();
  CHECK(triples.size() == 455);
  CHECK(jacobi_residual(triples, BracketMode::Quantum) == 0);
  CHECK(jacobi_residual(triples, BracketMode::Classical) == 0);
}

TEST_CASE("GeneratorSet shape checks") {
  std::array<Matrix, 15> ops;
  for (auto &m : ops)
    m = Matrix::Zero(3, 3);
  ops[4] = Matrix::Zero(2, 2);
  CHECK_THROWS_AS(GeneratorSet{ops}, std::invalid_argument);
  ops[4] = Matrix::Zero(3, 2);
  CHECK_THROWS_AS(GeneratorSet{ops}, std::invalid_argument);
}

TEST_CASE("GeneratorSet antisymmetric access") {
  const auto gs = random_set(3, 7);
  CHECK((gs.M(2, 1) + gs[GeneratorIndex(1, 2)]).norm() == 0.0);
  CHECK(gs.M(4, 4).norm() == 0.0);
  CHECK((gs.K(3) - gs.M(3, 5)).norm() == 0.0);
  CHECK((gs.L(2) + gs.M(6, 2)).norm() == 0.0);
  CHECK((gs.h() - gs.M(5, 6)).norm() == 0.0);
}

TEST_CASE("tensor contraction agrees with component formulas on random input") {
  for (unsigned seed : {1u, 2u, 3u}) {
    const auto gs = random_set(4, seed);
    for (double c : {0.0, 2.0, -1.5}) {
      const auto t = tensor_T(gs, c);
      const auto tc = tensor_T_components(gs, c);
      for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
          CHECK((t[a][b] - tc[a][b]).norm() <= 1e-11 * (1.0 + t[a][b].norm()));
          CHECK((t[a][b] - t[b][a]).norm() <= 1e-11 * (1.0 + t[a][b].norm()));
        }
    }
    const auto r = tensor_R(gs);
    const auto rc = tensor_R_components(gs);
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b) {
        CHECK((r[a][b] - rc[a][b]).norm() <= 1e-11 * (1.0 + r[a][b].norm()));
        CHECK((r[a][b] + r[b][a]).norm() <= 1e-11 * (1.0 + r[a][b].norm()));
      }
  }
}

TEST_CASE("commuting scalars: R vanishes, T is a product of numbers") {
  // 1x1 generators: anticommutators are twice the product.
  std::array<Matrix, 15> ops;
  for (int k = 0; k < 15; ++k)
    ops[k] = Matrix::Constant(1, 1, k + 1.0);
  const GeneratorSet gs(ops);
  // R^56 = eps^{56cdef}{M_cd, M_ef}: each pairing occurs 8 times, times 2
  // for the anticommutator.
  const double m12 = 1, m13 = 2, m14 = 3, m23 = 6, m24 = 7, m34 = 10;
  const double expect = 16.0 * (m12 * m34 - m13 * m24 + m14 * m23);
  CHECK(tensor_R(gs)[4][5](0, 0).real() == doctest::Approx(expect));
  // T~_11 = sum_d g_dd 2 M_1d^2 + c
  double t11 = 0.0;
  for (int d = 2; d <= 6; ++d) {
    const double m = gs.M(1, d)(0, 0).real();
    t11 += metric(d) * 2.0 * m * m;
  }
  CHECK(tensor_T(gs, 2.0)[0][0](0, 0).real() == doctest::Approx(t11 + 2.0));
}
