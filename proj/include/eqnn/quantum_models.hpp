// Parameterized circuits for the two quantum classifiers and their losses.
//
// QNN: one-qubit data re-uploading. Each depth block applies the embedding
//   RZ(x1), RY(x2), RZ(0) followed by trainable RZ(a), RY(b), RZ(c).
//
// EQNN: two qubits. A fixed RY(pi/2) on each qubit prepares |++>, the state
//   fixed by SWAP and X(x)X. Each depth block then applies RZ(x1) on qubit 0,
//   RZ(x2) on qubit 1, RX(t1) on both qubits with one shared slot, and
//   RZZ(t2) on (0, 1). Every block gate commutes with S, A and SA, and the
//   embedding is intertwined by them, so the model output transforms exactly
//   like its observables.
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "eqnn/datasets.hpp"
#include "eqnn/point.hpp"
#include "eqnn/qsim.hpp"

namespace eqnn {

struct ParamBinding {
  enum class Source { Feature, Trainable, Constant };

  Source source = Source::Constant;
  std::size_t index = 0;  // feature index or trainable slot
  double value = 0.0;     // constant angle

  static ParamBinding feature(std::size_t i) { return {Source::Feature, i, 0.0}; }
  static ParamBinding trainable(std::size_t slot) { return {Source::Trainable, slot, 0.0}; }
  static ParamBinding constant(double v) { return {Source::Constant, 0, v}; }
};

struct CircuitOp {
  GateKind kind;
  std::array<int, 2> targets;
  ParamBinding angle;
};

struct ParamCircuit {
  int n_qubits = 1;
  std::vector<CircuitOp> ops;
  std::size_t n_trainable = 0;

  /// Throws std::invalid_argument if a feature index is >= 2, a slot is out
  /// of range, a slot is never referenced, or a target is invalid.
  void validate() const;

  /// Angle of op i for the given parameters and input.
  double angle(std::size_t op, std::span<const double> params, Point2 x) const;

  /// Runs the circuit from |0...0>. `shift_op`/`shift` add `shift` to a single
  /// op's angle (used by the parameter-shift rule); shift_op = npos for none.
  StateVector run(std::span<const double> params, Point2 x,
                  std::size_t shift_op = static_cast<std::size_t>(-1),
                  double shift = 0.0) const;
};

enum class CircuitKind { Qnn, Eqnn };
enum class LossKind { ReuploadPair, SymmetricBCE, AntiPair };

const char* to_string(CircuitKind kind);
const char* to_string(LossKind kind);

/// Throws std::invalid_argument for depth 0.
ParamCircuit build_qnn(int depth);
ParamCircuit build_eqnn(int depth);

// Readout observables.
Observable qnn_o1();                 // diag(1, 0)
Observable qnn_o2();                 // diag(0, 1)
Observable symmetric_observable();   // all-ones / 4
Observable antisymmetric_o1();
Observable antisymmetric_o2();
Observable fully_antisymmetric_o1();
Observable fully_antisymmetric_o2();

struct Scores {
  std::array<double, 2> value{0.0, 0.0};        // |<O_k>|
  std::array<double, 2> expectation{0.0, 0.0};  // signed <O_k>
  std::size_t count = 0;
};

struct Prediction {
  int label = 0;
  double score = 0.5;  // in [0, 1], higher means class 1
};

struct QuantumModel {
  CircuitKind kind = CircuitKind::Qnn;
  int depth = 1;
  DatasetKind dataset = DatasetKind::Symmetric;
  ParamCircuit circuit;
  std::vector<Observable> readouts;
  LossKind loss = LossKind::ReuploadPair;
  std::vector<double> params;

  /// Throws std::invalid_argument if readout count or parameter length is
  /// inconsistent with the loss kind / circuit.
  void validate() const;
};

/// QNN for any dataset: ReuploadPair with diag(1,0) / diag(0,1).
QuantumModel make_qnn(DatasetKind dataset, int depth);
/// EQNN: SymmetricBCE for the symmetric dataset, AntiPair with the matching
/// observable pair otherwise.
QuantumModel make_eqnn(DatasetKind dataset, int depth);

/// Default depths: QNN 4 / 8 and EQNN 5 / 10 for symmetric / other datasets.
int default_qnn_depth(DatasetKind dataset);
int default_eqnn_depth(DatasetKind dataset);

/// Parameters i.i.d. uniform on [0, 2 pi).
void initialize_params(QuantumModel& model, std::uint64_t seed);

Scores forward(const QuantumModel& model, Point2 p);
Scores scores_from_state(const QuantumModel& model, const StateVector& state);

/// Pair loss y (1 - s1)^2 + (1 - y)(1 - s2)^2, or BCE on s clamped to
/// [1e-7, 1 - 1e-7].
double loss(LossKind kind, const Scores& scores, int y);
double loss(const QuantumModel& model, Point2 p, int y);

/// d loss / d s_k for the same formulas (0 where the clamp binds).
std::array<double, 2> loss_score_gradient(LossKind kind, const Scores& scores, int y);

inline constexpr double kBceClamp = 1e-7;

/// Pair losses: score = s1 / (s1 + s2) (0.5 if both vanish). BCE: score = s.
/// Class 1 iff score > 0.5.
Prediction predict(LossKind kind, const Scores& scores);
Prediction predict(const QuantumModel& model, Point2 p);

}  // namespace eqnn
