#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "eqnn/classical_models.hpp"
#include "eqnn/datasets.hpp"
#include "eqnn/quantum_models.hpp"

namespace eqnn {

/// Exact gradient of the model loss at (p, y) by the parameter-shift rule.
/// Every occurrence of a slot contributes [<O>(theta + pi/2) - <O>(theta -
/// pi/2)] / 2; the |<O>| in the loss is chained through sign(<O>) with
/// subgradient 0 at exactly 0.
std::vector<double> param_shift_gradient(const QuantumModel& model, Point2 p, int y);

/// Same, also returning the loss at (p, y).
double param_shift_loss_and_gradient(const QuantumModel& model, Point2 p, int y,
                                     std::span<double> grad);

struct AdamConfig {
  double lr = 0.1;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  AdamConfig config;
  std::vector<double> m;
  std::vector<double> v;
  std::uint64_t t = 0;

  AdamState() = default;
  AdamState(std::size_t n, AdamConfig cfg) : config(cfg), m(n, 0.0), v(n, 0.0) {}
};

/// One bias-corrected Adam update of `params` in place. Throws
/// std::invalid_argument if params, grad and the moment vectors differ in
/// length.
void adam_step(AdamState& state, std::span<double> params, std::span<const double> grad);

/// The four benchmarked model families behind one value type.
using AnyModel = std::variant<QuantumModel, DenseNet, EnnNet>;

std::span<double> parameters(AnyModel& model);
std::span<const double> parameters(const AnyModel& model);
std::size_t param_count(const AnyModel& model);

/// Loss at (p, y); fills grad (overwritten) with its exact gradient.
double loss_and_gradient(const AnyModel& model, Point2 p, int y, std::span<double> grad);
Prediction predict(const AnyModel& model, Point2 p);

/// Fraction of points classified correctly.
double evaluate_accuracy(const AnyModel& model, const LabeledDataset& data);
/// Class-1 scores for every point.
std::vector<double> score_all(const AnyModel& model, const LabeledDataset& data);

struct TrainConfig {
  int epochs = 30;
  std::size_t batch_size = 20;
  double lr = 0.1;
  std::uint64_t seed = 0;
  bool eval_each_epoch = true;

  /// Throws std::invalid_argument for epochs < 1 or batch_size < 1.
  void validate() const;
};

struct EpochRecord {
  int epoch = 0;
  double train_acc = 0.0;
  double test_acc = 0.0;
  double mean_loss = 0.0;  // mean per-sample loss over the epoch's batches
};

struct TrainTrace {
  std::vector<EpochRecord> epochs;
  std::vector<double> final_params;
};

/// Mini-batch Adam over a seeded per-epoch shuffle; the batch gradient is
/// the mean of per-sample gradients. Updates `model` in place. When
/// eval_each_epoch is false only the last epoch is evaluated (the other
/// records carry NaN accuracies). Throws std::invalid_argument for an empty
/// training set.
TrainTrace train(AnyModel& model, const LabeledDataset& train_data,
                 const LabeledDataset& test_data, const TrainConfig& config);

/// CSV `epoch,train_acc,test_acc,mean_loss`.
void write_trace_csv(std::ostream& out, const TrainTrace& trace);

}  // namespace eqnn
