// Concrete Z2 x Z2 actions on the plane and on the two-qubit Hilbert space,
// plus the numeric checks that tie them together.
//
// Point actions:
//   DiagSwap          (x1, x2) -> ( x2,  x1)   reflection about x1 = x2
//   AntiDiagNegSwap   (x1, x2) -> (-x2, -x1)   reflection about x1 = -x2
//   Both              (x1, x2) -> (-x1, -x2)   their composition
//
// Unitary representations on two qubits:
//   S  = SWAP                         realizes DiagSwap
//   A  = X (x) X (the anti-diagonal)  realizes Both
//   SA = S * A                        realizes AntiDiagNegSwap
// "Realizes" is with respect to the embedding E(x) = RZ(x1) (x) RZ(x2):
// U E(x) U^dag = E(g x). The printed reflection matrix for x1 = -x2 is A,
// which maps the anti-symmetric O1 onto O2 but intertwines the embedding only
// with (x1, x2) -> (-x1, -x2); SA is the exact intertwiner for x1 = -x2.
#pragma once

#include <span>
#include <string>
#include <vector>

#include "eqnn/point.hpp"
#include "eqnn/qsim.hpp"

namespace eqnn {

enum class TransformKind { Identity, DiagSwap, AntiDiagNegSwap, Both };
enum class LabelAction { Invariant, Flip };

const char* to_string(TransformKind kind);

struct PointTransform {
  TransformKind kind = TransformKind::Identity;
  LabelAction label_action = LabelAction::Invariant;

  Point2 operator()(Point2 p) const;
};

/// The action of a group element on a point (exact, no rounding).
Point2 apply_transform(TransformKind kind, Point2 p);

/// Group product: apply `second` after `first`.
TransformKind compose(TransformKind first, TransformKind second);

struct UnitaryRep {
  std::string name;
  CMatrix matrix;
  TransformKind transform;  // the point action this unitary intertwines
};

CMatrix swap_matrix();
/// The anti-diagonal reflection matrix, equal to X (x) X.
CMatrix reflection_matrix();

/// S, A and SA, in that order.
std::vector<UnitaryRep> builtin_reps();
const UnitaryRep& rep_for(TransformKind kind);

/// Max-abs deviation of [U(theta), U_g] over 16 angles in [0, 2 pi).
/// `layer` lists the gates that make up one 2-qubit operator; every gate's
/// angle is replaced by the grid angle. Throws std::invalid_argument if the
/// layer does not act on exactly the rep's dimension.
double check_gate_equivariance(std::span<const Gate> layer,
                               const UnitaryRep& rep);

/// Single-gate form: one-qubit kinds are placed on both qubits with a shared
/// angle (as in the EQNN layer), RZZ acts on (0, 1).
double check_gate_equivariance(const Gate& gate, const UnitaryRep& rep);

/// U_g^dag O U_g.
Observable conjugate_observable(const Observable& obs, const UnitaryRep& rep);

/// The embedding layer E(x) = RZ(x1) (x) RZ(x2).
CMatrix embedding_unitary(Point2 p);

/// max over samples of || U_g E(x) U_g^dag - E(g x) ||_max.
double check_embedding_intertwiner(const UnitaryRep& rep, TransformKind transform,
                                   std::span<const Point2> samples);

/// A rep matches a transform when the intertwiner deviation is below this.
inline constexpr double kIntertwinerTolerance = 1e-10;

}  // namespace eqnn
