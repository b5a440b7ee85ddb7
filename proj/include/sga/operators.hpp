#pragma once

#include "sga/algebra.hpp"
#include "sga/hilbert.hpp"

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <vector>

namespace sga::operators {

using Matrix = Eigen::MatrixXcd;
using SpacePtr = std::shared_ptr<const hilbert::TruncatedSpace>;

/// Dense operator on a truncated space together with its level coupling.
///
/// blocks()[m] lists the target levels n for which the (n <- m) block is
/// nonzero. The map is recomputed from the matrix on construction.
class OperatorRep {
public:
  OperatorRep() = default;
  OperatorRep(SpacePtr space, Matrix matrix);

  const Matrix &matrix() const { return matrix_; }
  const hilbert::TruncatedSpace &space() const { return *space_; }
  const SpacePtr &space_ptr() const { return space_; }
  bool hermitian() const { return hermitian_; }
  const std::vector<std::vector<int>> &blocks() const { return blocks_; }

  /// Sub-block mapping level `from` to level `to`.
  Matrix block(int to, int from) const;

  /// Largest |to - from| over the nonzero blocks (0 for the zero operator).
  int max_level_shift() const;

  OperatorRep adjoint() const { return {space_, matrix_.adjoint()}; }

  friend OperatorRep operator+(const OperatorRep &a, const OperatorRep &b);
  friend OperatorRep operator-(const OperatorRep &a, const OperatorRep &b);
  friend OperatorRep operator*(const OperatorRep &a, const OperatorRep &b);
  friend OperatorRep operator*(std::complex<double> s, const OperatorRep &a);

private:
  SpacePtr space_;
  Matrix matrix_;
  bool hermitian_ = false;
  std::vector<std::vector<int>> blocks_;
};

OperatorRep commutator(const OperatorRep &a, const OperatorRep &b);
OperatorRep identity(const SpacePtr &space);

/// f(A) for Hermitian A via its eigendecomposition.
OperatorRep hermitian_function(const OperatorRep &a, const std::function<double(double)> &fn);

/// f(h) = 2 Gamma(h/2 + 3/4) / Gamma(h/2 + 1/4), evaluated through log-Gamma.
/// Satisfies f(h) f(h+1) = 2h + 1.
double f_gamma(double h);

/// J_ij for i < j in (12, 13, 14, 23, 24, 34) order.
using JArray = std::array<OperatorRep, 6>;
using Vec4 = std::array<OperatorRep, 4>;

/// Position of J_ij (1-based, i != j) in a JArray together with its sign.
std::pair<int, int> j_slot(int i, int j);
/// J_ij for any i, j in 1..4 (zero on the diagonal).
OperatorRep j_component(const JArray &J, int i, int j);

/// J_jk = -i (x_j d_k - x_k d_j) on the harmonic levels.
JArray build_J(const SpacePtr &space);

/// Multiplication by x_i followed by projection onto the truncated space.
Vec4 build_X(const SpacePtr &space);

struct HamiltonianOps {
  OperatorRep H;     // (1/2) J_ij J_ij
  OperatorRep h;     // sqrt(H + 1)
  OperatorRep gamma; // h - 1
};

/// Throws std::runtime_error if H has an eigenvalue below -1.
HamiltonianOps build_h(const JArray &J);

struct LadderOps {
  Vec4 K;      // sqrt(h) X_i sqrt(h)
  Vec4 L;      // -i [K_i, h]
  Vec4 Aplus;  // K_i - i L_i
  Vec4 Aminus; // K_i + i L_i
};

LadderOps build_ladder(const Vec4 &X, const OperatorRep &h);

/// P_i = -(1/2)(J_ik X_k + X_k J_ik).
Vec4 build_P(const JArray &J, const Vec4 &X);

struct EigenOps {
  Vec4 Vplus;  // -i (h + 1/2) X_i - P_i
  Vec4 Vminus; // -i (-h + 1/2) X_i - P_i
};

EigenOps build_V(const Vec4 &X, const Vec4 &P, const OperatorRep &h);

using So42Map = std::map<algebra::GeneratorIndex, OperatorRep>;

/// M_ij = J_ij, M_i5 = K_i, M_i6 = L_i, M_56 = h.
So42Map assemble_so42(const JArray &J, const LadderOps &ladder, const OperatorRep &h);

/// Matrices of an assembled map, ready for the tensor evaluators.
algebra::GeneratorSet to_generator_set(const So42Map &ops);

/// Every operator built on one truncated space.
struct Representation {
  SpacePtr space;
  JArray J;
  Vec4 X;
  Vec4 P;
  HamiltonianOps ham;
  LadderOps ladder;
  EigenOps eigen;
  So42Map so42;
};

Representation build_representation(int max_level);
Representation build_representation(SpacePtr space);

} // namespace sga::operators
