#include "eqnn/training.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>

#include "eqnn/csv.hpp"
#include "eqnn/random.hpp"

namespace eqnn {
namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

double param_shift_loss_and_gradient(const QuantumModel& model, Point2 p, int y,
                                     std::span<double> grad) {
  if (grad.size() != model.params.size()) {
    throw std::invalid_argument("gradient length does not match parameter count");
  }
  std::fill(grad.begin(), grad.end(), 0.0);
  const ParamCircuit& circuit = model.circuit;
  const Scores base = scores_from_state(model, circuit.run(model.params, p));
  const double value = loss(model.loss, base, y);

  // d loss / d <O_k> = d loss / d |<O_k>| * sign(<O_k>).
  const auto d_score = loss_score_gradient(model.loss, base, y);
  std::array<double, 2> coef{0.0, 0.0};
  for (std::size_t k = 0; k < base.count; ++k) coef[k] = d_score[k] * sign(base.expectation[k]);
  if (coef[0] == 0.0 && coef[1] == 0.0) return value;

  constexpr double kShift = std::numbers::pi / 2.0;
  for (std::size_t i = 0; i < circuit.ops.size(); ++i) {
    const ParamBinding& b = circuit.ops[i].angle;
    if (b.source != ParamBinding::Source::Trainable) continue;
    const Scores plus = scores_from_state(model, circuit.run(model.params, p, i, kShift));
    const Scores minus = scores_from_state(model, circuit.run(model.params, p, i, -kShift));
    for (std::size_t k = 0; k < base.count; ++k) {
      grad[b.index] += coef[k] * 0.5 * (plus.expectation[k] - minus.expectation[k]);
    }
  }
  return value;
}

std::vector<double> param_shift_gradient(const QuantumModel& model, Point2 p, int y) {
  std::vector<double> g(model.params.size());
  param_shift_loss_and_gradient(model, p, y, g);
  return g;
}

void adam_step(AdamState& state, std::span<double> params, std::span<const double> grad) {
  if (params.size() != grad.size() || state.m.size() != params.size() ||
      state.v.size() != params.size()) {
    throw std::invalid_argument("Adam: parameter, gradient and moment lengths differ");
  }
  const AdamConfig& c = state.config;
  ++state.t;
  const double t = static_cast<double>(state.t);
  const double correction1 = 1.0 - std::pow(c.beta1, t);
  const double correction2 = 1.0 - std::pow(c.beta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    state.m[i] = c.beta1 * state.m[i] + (1.0 - c.beta1) * grad[i];
    state.v[i] = c.beta2 * state.v[i] + (1.0 - c.beta2) * grad[i] * grad[i];
    const double m_hat = state.m[i] / correction1;
    const double v_hat = state.v[i] / correction2;
    params[i] -= c.lr * m_hat / (std::sqrt(v_hat) + c.eps);
  }
}

std::span<double> parameters(AnyModel& model) {
  return std::visit(Overloaded{[](QuantumModel& m) { return std::span<double>(m.params); },
                               [](auto& net) { return net.params(); }},
                    model);
}

std::span<const double> parameters(const AnyModel& model) {
  return std::visit(
      Overloaded{[](const QuantumModel& m) { return std::span<const double>(m.params); },
                 [](const auto& net) { return net.params(); }},
      model);
}

std::size_t param_count(const AnyModel& model) { return parameters(model).size(); }

double loss_and_gradient(const AnyModel& model, Point2 p, int y, std::span<double> grad) {
  return std::visit(
      Overloaded{[&](const QuantumModel& m) { return param_shift_loss_and_gradient(m, p, y, grad); },
                 [&](const auto& net) { return loss_and_gradient(net, p, y, grad); }},
      model);
}

Prediction predict(const AnyModel& model, Point2 p) {
  return std::visit(Overloaded{[&](const QuantumModel& m) { return predict(m, p); },
                               [&](const DenseNet& net) {
                                 const double s = dnn_forward(net, p)[1];
                                 return Prediction{s > 0.5 ? 1 : 0, s};
                               },
                               [&](const EnnNet& net) {
                                 const double s = enn_forward(net, p)[1];
                                 return Prediction{s > 0.5 ? 1 : 0, s};
                               }},
                    model);
}

double evaluate_accuracy(const AnyModel& model, const LabeledDataset& data) {
  if (data.size() == 0) return std::numeric_limits<double>::quiet_NaN();
  std::size_t correct = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (predict(model, data.points[i]).label == data.labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

std::vector<double> score_all(const AnyModel& model, const LabeledDataset& data) {
  std::vector<double> scores;
  scores.reserve(data.size());
  for (const auto& p : data.points) scores.push_back(predict(model, p).score);
  return scores;
}

void TrainConfig::validate() const {
  if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  if (batch_size < 1) throw std::invalid_argument("batch size must be >= 1");
  if (!(lr >= 0.0)) throw std::invalid_argument("learning rate must be >= 0");
}

TrainTrace train(AnyModel& model, const LabeledDataset& train_data,
                 const LabeledDataset& test_data, const TrainConfig& config) {
  config.validate();
  if (train_data.size() == 0) throw std::invalid_argument("training set is empty");

  const std::size_t n_params = param_count(model);
  AdamState adam(n_params, AdamConfig{.lr = config.lr});
  std::mt19937_64 rng(derive_seed(config.seed, kShuffleStream));
  std::vector<std::size_t> order(train_data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> sample_grad(n_params);
  std::vector<double> batch_grad(n_params);

  TrainTrace trace;
  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double loss_sum = 0.0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t stop = std::min(order.size(), start + config.batch_size);
      std::fill(batch_grad.begin(), batch_grad.end(), 0.0);
      for (std::size_t k = start; k < stop; ++k) {
        const std::size_t idx = order[k];
        loss_sum += loss_and_gradient(model, train_data.points[idx], train_data.labels[idx],
                                      sample_grad);
        for (std::size_t j = 0; j < n_params; ++j) batch_grad[j] += sample_grad[j];
      }
      const double inv = 1.0 / static_cast<double>(stop - start);
      for (double& g : batch_grad) g *= inv;
      adam_step(adam, parameters(model), batch_grad);
    }
    EpochRecord rec;
    rec.epoch = epoch;
    rec.mean_loss = loss_sum / static_cast<double>(order.size());
    if (config.eval_each_epoch || epoch == config.epochs) {
      rec.train_acc = evaluate_accuracy(model, train_data);
      rec.test_acc = evaluate_accuracy(model, test_data);
    } else {
      rec.train_acc = kNaN;
      rec.test_acc = kNaN;
    }
    trace.epochs.push_back(rec);
  }
  const auto final_params = parameters(model);
  trace.final_params.assign(final_params.begin(), final_params.end());
  return trace;
}

void write_trace_csv(std::ostream& out, const TrainTrace& trace) {
  out << "epoch,train_acc,test_acc,mean_loss\n";
  for (const auto& r : trace.epochs) {
    out << r.epoch << ',' << csv::format_double(r.train_acc) << ','
        << csv::format_double(r.test_acc) << ',' << csv::format_double(r.mean_loss) << '\n';
  }
}

}  // namespace eqnn
