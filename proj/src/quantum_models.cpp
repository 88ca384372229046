#include "eqnn/quantum_models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace eqnn {
namespace {

Observable quarter(std::initializer_list<double> entries) {
  CMatrix m(4, 4);
  auto it = entries.begin();
  for (Eigen::Index r = 0; r < 4; ++r) {
    for (Eigen::Index c = 0; c < 4; ++c) m(r, c) = *it++ / 4.0;
  }
  return Observable(std::move(m));
}

Observable diag2(double a, double b) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return Observable(std::move(m));
}

void check_depth(int depth) {
  if (depth < 1) throw std::invalid_argument("circuit depth must be >= 1");
}

}  // namespace

const char* to_string(CircuitKind kind) {
  return kind == CircuitKind::Qnn ? "QNN" : "EQNN";
}

const char* to_string(LossKind kind) {
  switch (kind) {
    case LossKind::ReuploadPair: return "ReuploadPair";
    case LossKind::SymmetricBCE: return "SymmetricBCE";
    case LossKind::AntiPair: return "AntiPair";
  }
  return "?";
}

void ParamCircuit::validate() const {
  std::vector<int> used(n_trainable, 0);
  for (const auto& op : ops) {
    const int k = arity(op.kind);
    for (int t = 0; t < k; ++t) {
      const int q = op.targets[static_cast<std::size_t>(t)];
      if (q < 0 || q >= n_qubits) throw std::invalid_argument("circuit target out of range");
    }
    if (k == 2 && op.targets[0] == op.targets[1]) {
      throw std::invalid_argument("two-qubit op needs distinct targets");
    }
    switch (op.angle.source) {
      case ParamBinding::Source::Feature:
        if (op.angle.index >= 2) throw std::invalid_argument("feature index must be < 2");
        break;
      case ParamBinding::Source::Trainable:
        if (op.angle.index >= n_trainable) {
          throw std::invalid_argument("trainable slot out of range");
        }
        used[op.angle.index] = 1;
        break;
      case ParamBinding::Source::Constant:
        break;
    }
  }
  for (std::size_t s = 0; s < used.size(); ++s) {
    if (!used[s]) {
      throw std::invalid_argument("trainable slot " + std::to_string(s) + " is unused");
    }
  }
}

double ParamCircuit::angle(std::size_t op, std::span<const double> params, Point2 x) const {
  const ParamBinding& b = ops[op].angle;
  switch (b.source) {
    case ParamBinding::Source::Feature: return b.index == 0 ? x.x1 : x.x2;
    case ParamBinding::Source::Trainable: return params[b.index];
    case ParamBinding::Source::Constant: return b.value;
  }
  return 0.0;
}

StateVector ParamCircuit::run(std::span<const double> params, Point2 x,
                              std::size_t shift_op, double shift) const {
  if (params.size() != n_trainable) {
    throw std::invalid_argument("parameter vector length " + std::to_string(params.size()) +
                                " != " + std::to_string(n_trainable));
  }
  StateVector state(n_qubits);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    double theta = angle(i, params, x);
    if (i == shift_op) theta += shift;
    state.apply(Gate{ops[i].kind, ops[i].targets, theta});
  }
  return state;
}

ParamCircuit build_qnn(int depth) {
  check_depth(depth);
  ParamCircuit c;
  c.n_qubits = 1;
  c.n_trainable = 3 * static_cast<std::size_t>(depth);
  for (int d = 0; d < depth; ++d) {
    const auto slot = 3 * static_cast<std::size_t>(d);
    c.ops.push_back({GateKind::RZ, {0, -1}, ParamBinding::feature(0)});
    c.ops.push_back({GateKind::RY, {0, -1}, ParamBinding::feature(1)});
    c.ops.push_back({GateKind::RZ, {0, -1}, ParamBinding::constant(0.0)});
    c.ops.push_back({GateKind::RZ, {0, -1}, ParamBinding::trainable(slot)});
    c.ops.push_back({GateKind::RY, {0, -1}, ParamBinding::trainable(slot + 1)});
    c.ops.push_back({GateKind::RZ, {0, -1}, ParamBinding::trainable(slot + 2)});
  }
  return c;
}

ParamCircuit build_eqnn(int depth) {
  check_depth(depth);
  ParamCircuit c;
  c.n_qubits = 2;
  c.n_trainable = 2 * static_cast<std::size_t>(depth);
  const double half_pi = std::numbers::pi / 2.0;
  c.ops.push_back({GateKind::RY, {0, -1}, ParamBinding::constant(half_pi)});
  c.ops.push_back({GateKind::RY, {1, -1}, ParamBinding::constant(half_pi)});
  for (int d = 0; d < depth; ++d) {
    const auto slot = 2 * static_cast<std::size_t>(d);
    c.ops.push_back({GateKind::RZ, {0, -1}, ParamBinding::feature(0)});
    c.ops.push_back({GateKind::RZ, {1, -1}, ParamBinding::feature(1)});
    c.ops.push_back({GateKind::RX, {0, -1}, ParamBinding::trainable(slot)});
    c.ops.push_back({GateKind::RX, {1, -1}, ParamBinding::trainable(slot)});
    c.ops.push_back({GateKind::RZZ, {0, 1}, ParamBinding::trainable(slot + 1)});
  }
  return c;
}

Observable qnn_o1() { return diag2(1.0, 0.0); }
Observable qnn_o2() { return diag2(0.0, 1.0); }

Observable symmetric_observable() {
  return quarter({1, 1, 1, 1,
                  1, 1, 1, 1,
                  1, 1, 1, 1,
                  1, 1, 1, 1});
}

Observable antisymmetric_o1() {
  return quarter({ 1,  1,  1, -1,
                   1,  1,  1, -1,
                   1,  1,  1, -1,
                  -1, -1, -1,  1});
}

Observable antisymmetric_o2() {
  return quarter({ 1, -1, -1, -1,
                  -1,  1,  1,  1,
                  -1,  1,  1,  1,
                  -1,  1,  1,  1});
}

Observable fully_antisymmetric_o1() {
  return quarter({ 1, -1,  1,  1,
                  -1,  1, -1,  1,
                   1, -1,  1, -1,
                   1,  1, -1,  1});
}

Observable fully_antisymmetric_o2() {
  return quarter({ 1,  1, -1,  1,
                   1,  1, -1, -1,
                  -1, -1,  1,  1,
                   1, -1,  1,  1});
}

void QuantumModel::validate() const {
  circuit.validate();
  const std::size_t want = loss == LossKind::SymmetricBCE ? 1 : 2;
  if (readouts.size() != want) {
    throw std::invalid_argument(std::string(to_string(loss)) + " needs " +
                                std::to_string(want) + " readout(s)");
  }
  if (params.size() != circuit.n_trainable) {
    throw std::invalid_argument("parameter vector length does not match circuit");
  }
  for (const auto& o : readouts) {
    if (o.dim() != (std::size_t{1} << circuit.n_qubits)) {
      throw std::invalid_argument("readout dimension does not match circuit");
    }
  }
}

int default_qnn_depth(DatasetKind dataset) {
  return dataset == DatasetKind::Symmetric ? 4 : 8;
}

int default_eqnn_depth(DatasetKind dataset) {
  return dataset == DatasetKind::Symmetric ? 5 : 10;
}

QuantumModel make_qnn(DatasetKind dataset, int depth) {
  QuantumModel m;
  m.kind = CircuitKind::Qnn;
  m.depth = depth;
  m.dataset = dataset;
  m.circuit = build_qnn(depth);
  m.readouts = {qnn_o1(), qnn_o2()};
  m.loss = LossKind::ReuploadPair;
  m.params.assign(m.circuit.n_trainable, 0.0);
  return m;
}

QuantumModel make_eqnn(DatasetKind dataset, int depth) {
  QuantumModel m;
  m.kind = CircuitKind::Eqnn;
  m.depth = depth;
  m.dataset = dataset;
  m.circuit = build_eqnn(depth);
  switch (dataset) {
    case DatasetKind::Symmetric:
      m.readouts = {symmetric_observable()};
      m.loss = LossKind::SymmetricBCE;
      break;
    case DatasetKind::AntiSymmetric:
      m.readouts = {antisymmetric_o1(), antisymmetric_o2()};
      m.loss = LossKind::AntiPair;
      break;
    case DatasetKind::FullyAntiSymmetric:
      m.readouts = {fully_antisymmetric_o1(), fully_antisymmetric_o2()};
      m.loss = LossKind::AntiPair;
      break;
  }
  m.params.assign(m.circuit.n_trainable, 0.0);
  return m;
}

void initialize_params(QuantumModel& model, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (double& p : model.params) p = angle(rng);
}

Scores scores_from_state(const QuantumModel& model, const StateVector& state) {
  Scores s;
  s.count = model.readouts.size();
  for (std::size_t k = 0; k < s.count; ++k) {
    s.expectation[k] = expectation(state, model.readouts[k]);
    s.value[k] = std::abs(s.expectation[k]);
  }
  return s;
}

Scores forward(const QuantumModel& model, Point2 p) {
  return scores_from_state(model, model.circuit.run(model.params, p));
}

double loss(LossKind kind, const Scores& scores, int y) {
  if (kind == LossKind::SymmetricBCE) {
    const double s = std::clamp(scores.value[0], kBceClamp, 1.0 - kBceClamp);
    return -(y * std::log(s) + (1 - y) * std::log(1.0 - s));
  }
  const double a = 1.0 - scores.value[0];
  const double b = 1.0 - scores.value[1];
  return y * a * a + (1 - y) * b * b;
}

double loss(const QuantumModel& model, Point2 p, int y) {
  return loss(model.loss, forward(model, p), y);
}

std::array<double, 2> loss_score_gradient(LossKind kind, const Scores& scores, int y) {
  if (kind == LossKind::SymmetricBCE) {
    const double s = scores.value[0];
    if (s <= kBceClamp || s >= 1.0 - kBceClamp) return {0.0, 0.0};
    return {-y / s + (1 - y) / (1.0 - s), 0.0};
  }
  return {-2.0 * y * (1.0 - scores.value[0]), -2.0 * (1 - y) * (1.0 - scores.value[1])};
}

Prediction predict(LossKind kind, const Scores& scores) {
  double score = 0.5;
  if (kind == LossKind::SymmetricBCE) {
    score = scores.value[0];
  } else {
    const double total = scores.value[0] + scores.value[1];
    score = total > 0.0 ? scores.value[0] / total : 0.5;
  }
  return {score > 0.5 ? 1 : 0, score};
}

Prediction predict(const QuantumModel& model, Point2 p) {
  return predict(model.loss, forward(model, p));
}

}  // namespace eqnn
