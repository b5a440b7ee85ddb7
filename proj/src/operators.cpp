#include "sga/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace sga::operators {

namespace {

constexpr double kBlockTol = 1e-12;

const std::complex<double> I{0.0, 1.0};

// (i, j) pairs in JArray order.
constexpr std::array<std::pair<int, int>, 6> kJPairs{
    {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}};

Matrix level_block(const hilbert::TruncatedSpace &s, const Matrix &m, int to, int from) {
  return m.block(s.offset(to), s.offset(from), s.level_size(to), s.level_size(from));
}

} // namespace

OperatorRep::OperatorRep(SpacePtr space, Matrix matrix)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
  if (!space_)
    throw std::invalid_argument("OperatorRep needs a space");
  if (matrix_.rows() != space_->dim() || matrix_.cols() != space_->dim())
    throw std::invalid_argument("operator matrix does not match space dimension");
  const double scale = std::max(1.0, matrix_.cwiseAbs().maxCoeff());
  hermitian_ = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() <= kBlockTol * scale;
  const int top = space_->max_level();
  blocks_.assign(static_cast<std::size_t>(top) + 1, {});
  for (int from = 0; from <= top; ++from)
    for (int to = 0; to <= top; ++to)
      if (level_block(*space_, matrix_, to, from).cwiseAbs().maxCoeff() > kBlockTol * scale)
        blocks_[from].push_back(to);
}

Matrix OperatorRep::block(int to, int from) const {
  return level_block(*space_, matrix_, to, from);
}

int OperatorRep::max_level_shift() const {
  int shift = 0;
  for (std::size_t from = 0; from < blocks_.size(); ++from)
    for (const int to : blocks_[from])
      shift = std::max(shift, std::abs(to - static_cast<int>(from)));
  return shift;
}

OperatorRep operator+(const OperatorRep &a, const OperatorRep &b) {
  return {a.space_, a.matrix_ + b.matrix_};
}
OperatorRep operator-(const OperatorRep &a, const OperatorRep &b) {
  return {a.space_, a.matrix_ - b.matrix_};
}
OperatorRep operator*(const OperatorRep &a, const OperatorRep &b) {
  return {a.space_, a.matrix_ * b.matrix_};
}
OperatorRep operator*(std::complex<double> s, const OperatorRep &a) {
  return {a.space_, s * a.matrix_};
}

OperatorRep commutator(const OperatorRep &a, const OperatorRep &b) {
  return {a.space_ptr(), a.matrix() * b.matrix() - b.matrix() * a.matrix()};
}

OperatorRep identity(const SpacePtr &space) {
  return {space, Matrix::Identity(space->dim(), space->dim())};
}

OperatorRep hermitian_function(const OperatorRep &a, const std::function<double(double)> &fn) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.matrix());
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigensolver failed in hermitian_function");
  Eigen::VectorXd vals = es.eigenvalues();
  for (auto &v : vals)
    v = fn(v);
  const Matrix &u = es.eigenvectors();
  return {a.space_ptr(), u * vals.cast<std::complex<double>>().asDiagonal() * u.adjoint()};
}

double f_gamma(double h) {
  return 2.0 * std::exp(std::lgamma(h / 2.0 + 0.75) - std::lgamma(h / 2.0 + 0.25));
}

std::pair<int, int> j_slot(int i, int j) {
  const int sign = i < j ? 1 : -1;
  const auto key = std::minmax(i, j);
  for (std::size_t k = 0; k < kJPairs.size(); ++k)
    if (kJPairs[k] == std::pair<int, int>(key.first, key.second))
      return {static_cast<int>(k), sign};
  throw std::out_of_range("J index pair must be distinct labels in 1..4");
}

OperatorRep j_component(const JArray &J, int i, int j) {
  if (i == j)
    return {J[0].space_ptr(), Matrix::Zero(J[0].matrix().rows(), J[0].matrix().cols())};
  const auto [slot, sign] = j_slot(i, j);
  return static_cast<double>(sign) * J[static_cast<std::size_t>(slot)];
}

JArray build_J(const SpacePtr &space) {
  const auto &s = *space;
  std::array<Matrix, 6> mats;
  for (auto &m : mats)
    m = Matrix::Zero(s.dim(), s.dim());
  for (int n = 0; n <= s.max_level(); ++n) {
    const auto &lvl = s.level(n);
    for (std::size_t c = 0; c < lvl.size(); ++c) {
      const Eigen::Index col = s.offset(n) + static_cast<Eigen::Index>(c);
      for (std::size_t k = 0; k < kJPairs.size(); ++k) {
        const auto [a, b] = kJPairs[k];
        const hilbert::Polynomial4 img =
            -I * (lvl[c].derivative(b).times_coordinate(a) - lvl[c].derivative(a).times_coordinate(b));
        mats[k].col(col) = s.coordinates(img, n);
      }
    }
  }
  JArray out;
  for (std::size_t k = 0; k < 6; ++k)
    out[k] = OperatorRep(space, std::move(mats[k]));
  return out;
}

Vec4 build_X(const SpacePtr &space) {
  const auto &s = *space;
  Vec4 out;
  for (int i = 1; i <= 4; ++i) {
    Matrix m = Matrix::Zero(s.dim(), s.dim());
    for (int n = 0; n <= s.max_level(); ++n) {
      const auto &lvl = s.level(n);
      for (std::size_t c = 0; c < lvl.size(); ++c) {
        const Eigen::Index col = s.offset(n) + static_cast<Eigen::Index>(c);
        const auto img = lvl[c].times_coordinate(i);
        m.col(col) = s.coordinates(img, n - 1) + s.coordinates(img, n + 1);
      }
    }
    out[i - 1] = OperatorRep(space, std::move(m));
  }
  return out;
}

HamiltonianOps build_h(const JArray &J) {
  const auto &space = J[0].space_ptr();
  Matrix hm = Matrix::Zero(space->dim(), space->dim());
  for (const auto &j : J)
    hm += j.matrix() * j.matrix();
  OperatorRep H(space, hm);
  Eigen::SelfAdjointEigenSolver<Matrix> es(H.matrix(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigensolver failed on H");
  if (es.eigenvalues().minCoeff() < -1.0 - 1e-9)
    throw std::runtime_error("H has an eigenvalue below -1; representation is inconsistent");
  OperatorRep h = hermitian_function(H, [](double e) { return std::sqrt(std::max(0.0, e + 1.0)); });
  OperatorRep gamma = h - identity(space);
  return {std::move(H), std::move(h), std::move(gamma)};
}

LadderOps build_ladder(const Vec4 &X, const OperatorRep &h) {
  const OperatorRep sqrt_h = hermitian_function(h, [](double e) { return std::sqrt(e); });
  LadderOps out;
  for (std::size_t i = 0; i < 4; ++i) {
    out.K[i] = sqrt_h * X[i] * sqrt_h;
    out.L[i] = -I * commutator(out.K[i], h);
    out.Aplus[i] = out.K[i] - I * out.L[i];
    out.Aminus[i] = out.K[i] + I * out.L[i];
  }
  return out;
}

Vec4 build_P(const JArray &J, const Vec4 &X) {
  const auto &space = X[0].space_ptr();
  Vec4 out;
  for (int i = 1; i <= 4; ++i) {
    Matrix acc = Matrix::Zero(space->dim(), space->dim());
    for (int k = 1; k <= 4; ++k) {
      if (k == i)
        continue;
      const Matrix jik = j_component(J, i, k).matrix();
      const Matrix &xk = X[k - 1].matrix();
      acc += jik * xk + xk * jik;
    }
    out[i - 1] = OperatorRep(space, -0.5 * acc);
  }
  return out;
}

EigenOps build_V(const Vec4 &X, const Vec4 &P, const OperatorRep &h) {
  const auto &space = h.space_ptr();
  const Matrix half = 0.5 * Matrix::Identity(space->dim(), space->dim());
  EigenOps out;
  for (std::size_t i = 0; i < 4; ++i) {
    out.Vplus[i] = OperatorRep(space, -I * (h.matrix() + half) * X[i].matrix() - P[i].matrix());
    out.Vminus[i] = OperatorRep(space, -I * (half - h.matrix()) * X[i].matrix() - P[i].matrix());
  }
  return out;
}

So42Map assemble_so42(const JArray &J, const LadderOps &ladder, const OperatorRep &h) {
  So42Map out;
  for (std::size_t k = 0; k < kJPairs.size(); ++k)
    out.emplace(algebra::GeneratorIndex(kJPairs[k].first, kJPairs[k].second), J[k]);
  for (int i = 1; i <= 4; ++i) {
    out.emplace(algebra::GeneratorIndex(i, 5), ladder.K[i - 1]);
    out.emplace(algebra::GeneratorIndex(i, 6), ladder.L[i - 1]);
  }
  out.emplace(algebra::GeneratorIndex(5, 6), h);
  return out;
}

algebra::GeneratorSet to_generator_set(const So42Map &ops) {
  std::array<Matrix, 15> mats;
  for (const auto &g : algebra::GeneratorIndex::all())
    mats[g.flat()] = ops.at(g).matrix();
  return algebra::GeneratorSet(std::move(mats));
}

Representation build_representation(int max_level) {
  return build_representation(std::make_shared<const hilbert::TruncatedSpace>(
      hilbert::orthonormalize(max_level)));
}

Representation build_representation(SpacePtr space) {
  Representation rep;
  rep.space = space;
  rep.J = build_J(space);
  rep.X = build_X(space);
  rep.P = build_P(rep.J, rep.X);
  rep.ham = build_h(rep.J);
  rep.ladder = build_ladder(rep.X, rep.ham.h);
  rep.eigen = build_V(rep.X, rep.P, rep.ham.h);
  rep.so42 = assemble_so42(rep.J, rep.ladder, rep.ham.h);
  return rep;
}

} // namespace sga::operators
