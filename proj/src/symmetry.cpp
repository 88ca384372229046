#include "eqnn/symmetry.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace eqnn {
namespace {

constexpr int kAngleGrid = 16;

CMatrix permutation_matrix(const std::array<int, 4>& image) {
  CMatrix p = CMatrix::Zero(4, 4);
  for (int col = 0; col < 4; ++col) p(image[static_cast<std::size_t>(col)], col) = 1.0;
  return p;
}

// Klein four-group elements as bit pairs: bit 0 = DiagSwap, bit 1 = AntiDiag.
int code(TransformKind k) {
  switch (k) {
    case TransformKind::Identity: return 0;
    case TransformKind::DiagSwap: return 1;
    case TransformKind::AntiDiagNegSwap: return 2;
    case TransformKind::Both: return 3;
  }
  return 0;
}

TransformKind from_code(int c) {
  constexpr TransformKind table[] = {TransformKind::Identity, TransformKind::DiagSwap,
                                     TransformKind::AntiDiagNegSwap, TransformKind::Both};
  return table[c & 3];
}

}  // namespace

const char* to_string(TransformKind kind) {
  switch (kind) {
    case TransformKind::Identity: return "Identity";
    case TransformKind::DiagSwap: return "DiagSwap";
    case TransformKind::AntiDiagNegSwap: return "AntiDiagNegSwap";
    case TransformKind::Both: return "Both";
  }
  return "?";
}

Point2 apply_transform(TransformKind kind, Point2 p) {
  switch (kind) {
    case TransformKind::Identity: return p;
    case TransformKind::DiagSwap: return {p.x2, p.x1};
    case TransformKind::AntiDiagNegSwap: return {-p.x2, -p.x1};
    case TransformKind::Both: return {-p.x1, -p.x2};
  }
  return p;
}

Point2 PointTransform::operator()(Point2 p) const { return apply_transform(kind, p); }

TransformKind compose(TransformKind first, TransformKind second) {
  return from_code(code(first) ^ code(second));
}

CMatrix swap_matrix() { return permutation_matrix({0, 2, 1, 3}); }

CMatrix reflection_matrix() { return permutation_matrix({3, 2, 1, 0}); }

std::vector<UnitaryRep> builtin_reps() {
  return {
      {"S", swap_matrix(), TransformKind::DiagSwap},
      {"A", reflection_matrix(), TransformKind::Both},
      {"SA", swap_matrix() * reflection_matrix(), TransformKind::AntiDiagNegSwap},
  };
}

const UnitaryRep& rep_for(TransformKind kind) {
  static const std::vector<UnitaryRep> reps = builtin_reps();
  for (const auto& r : reps) {
    if (r.transform == kind) return r;
  }
  throw std::invalid_argument(std::string("no unitary rep for transform ") +
                              to_string(kind));
}

double check_gate_equivariance(std::span<const Gate> layer, const UnitaryRep& rep) {
  const auto dim = rep.matrix.rows();
  int n_qubits = 0;
  while ((Eigen::Index{1} << n_qubits) < dim) ++n_qubits;
  if ((Eigen::Index{1} << n_qubits) != dim || n_qubits < 1) {
    throw std::invalid_argument("rep dimension is not a power of two");
  }
  double worst = 0.0;
  for (int k = 0; k < kAngleGrid; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / kAngleGrid;
    CMatrix u = CMatrix::Identity(dim, dim);
    for (Gate g : layer) {
      g.angle = theta;
      // register_unitary throws std::out_of_range for targets outside the
      // rep's register; surface it as a dimension mismatch.
      try {
        u = register_unitary(g, n_qubits) * u;
      } catch (const std::out_of_range& e) {
        throw std::invalid_argument(std::string("gate does not fit rep: ") + e.what());
      }
    }
    worst = std::max(worst, max_abs_diff(u * rep.matrix, rep.matrix * u));
  }
  return worst;
}

double check_gate_equivariance(const Gate& gate, const UnitaryRep& rep) {
  if (rep.matrix.rows() != 4) {
    throw std::invalid_argument("single-gate equivariance check expects a 2-qubit rep");
  }
  if (arity(gate.kind) == 2) {
    const Gate g{gate.kind, {0, 1}, gate.angle};
    return check_gate_equivariance(std::span<const Gate>(&g, 1), rep);
  }
  const Gate pair[] = {Gate{gate.kind, {0, -1}, gate.angle},
                       Gate{gate.kind, {1, -1}, gate.angle}};
  return check_gate_equivariance(pair, rep);
}

Observable conjugate_observable(const Observable& obs, const UnitaryRep& rep) {
  if (static_cast<Eigen::Index>(obs.dim()) != rep.matrix.rows()) {
    throw std::invalid_argument("observable and rep dimensions differ");
  }
  CMatrix out = rep.matrix.adjoint() * obs.matrix() * rep.matrix;
  // Round-off can leave ~1e-17 anti-Hermitian residue; symmetrize exactly.
  out = 0.5 * (out + out.adjoint()).eval();
  return Observable(std::move(out));
}

CMatrix embedding_unitary(Point2 p) {
  return kron(gate_unitary(Gate::rz(0, p.x1)), gate_unitary(Gate::rz(0, p.x2)));
}

double check_embedding_intertwiner(const UnitaryRep& rep, TransformKind transform,
                                   std::span<const Point2> samples) {
  double worst = 0.0;
  for (const Point2& x : samples) {
    const CMatrix lhs = rep.matrix * embedding_unitary(x) * rep.matrix.adjoint();
    const CMatrix rhs = embedding_unitary(apply_transform(transform, x));
    worst = std::max(worst, max_abs_diff(lhs, rhs));
  }
  return worst;
}

}  // namespace eqnn
