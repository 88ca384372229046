#include "eqnn/classical_models.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <tuple>

namespace eqnn {
namespace {

double activate(Activation a, double z) {
  switch (a) {
    case Activation::Tanh: return std::tanh(z);
    case Activation::Sigmoid: return 1.0 / (1.0 + std::exp(-z));
    case Activation::Relu: return z > 0.0 ? z : 0.0;
  }
  return z;
}

// Derivative expressed through the activation's output.
double activate_grad(Activation a, double y) {
  switch (a) {
    case Activation::Tanh: return 1.0 - y * y;
    case Activation::Sigmoid: return y * (1.0 - y);
    case Activation::Relu: return y > 0.0 ? 1.0 : 0.0;
  }
  return 1.0;
}

Probs softmax2(std::span<const double> logits) {
  const double m = std::max(logits[0], logits[1]);
  const double e0 = std::exp(logits[0] - m);
  const double e1 = std::exp(logits[1] - m);
  return {e0 / (e0 + e1), e1 / (e0 + e1)};
}

// -log softmax(logits)[y], computed without forming the probabilities.
double log_loss(std::span<const double> logits, int y) {
  const double m = std::max(logits[0], logits[1]);
  const double lse = m + std::log(std::exp(logits[0] - m) + std::exp(logits[1] - m));
  return lse - logits[static_cast<std::size_t>(y)];
}

void uniform_fan_in_init(const Mlp& mlp, std::span<double> params, std::mt19937_64& rng) {
  std::size_t offset = 0;
  const auto& sizes = mlp.sizes();
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(sizes[l]));
    std::uniform_real_distribution<double> dist(-bound, bound);
    const std::size_t n = sizes[l] * sizes[l + 1] + sizes[l + 1];
    for (std::size_t i = 0; i < n; ++i) params[offset + i] = dist(rng);
    offset += n;
  }
}

void check_label(int y) {
  if (y != 0 && y != 1) throw std::invalid_argument("label must be 0 or 1");
}

// Ranking key for budget searches: larger is better.
using BudgetKey = std::tuple<std::size_t, std::size_t, long long, std::vector<std::size_t>>;

BudgetKey budget_key(std::size_t count, const std::vector<std::size_t>& widths) {
  const auto [lo, hi] = std::minmax_element(widths.begin(), widths.end());
  return {count, *lo, -static_cast<long long>(*hi - *lo), widths};
}

}  // namespace

const char* to_string(Activation a) {
  switch (a) {
    case Activation::Tanh: return "tanh";
    case Activation::Sigmoid: return "sigmoid";
    case Activation::Relu: return "relu";
  }
  return "?";
}

Activation parse_activation(std::string_view text) {
  if (text == "tanh") return Activation::Tanh;
  if (text == "sigmoid") return Activation::Sigmoid;
  if (text == "relu") return Activation::Relu;
  throw std::invalid_argument("unknown activation '" + std::string(text) + "'");
}

Mlp::Mlp(std::vector<std::size_t> sizes, Activation hidden, bool activate_last)
    : sizes_(std::move(sizes)), hidden_(hidden), activate_last_(activate_last) {
  if (sizes_.size() < 2) throw std::invalid_argument("an MLP needs at least two layer sizes");
  for (auto s : sizes_) {
    if (s == 0) throw std::invalid_argument("layer widths must be positive");
  }
}

std::size_t Mlp::param_count() const { return dense_param_count(sizes_); }

void Mlp::forward(std::span<const double> params, std::span<const double> input,
                  Cache& cache) const {
  const std::size_t n_layers = sizes_.size() - 1;
  cache.values.resize(sizes_.size());
  cache.values[0].assign(input.begin(), input.end());
  std::size_t offset = 0;
  for (std::size_t l = 0; l < n_layers; ++l) {
    const std::size_t in = sizes_[l];
    const std::size_t out = sizes_[l + 1];
    const double* w = params.data() + offset;
    const double* b = w + in * out;
    const auto& x = cache.values[l];
    auto& y = cache.values[l + 1];
    y.assign(out, 0.0);
    const bool act = l + 1 < n_layers || activate_last_;
    for (std::size_t o = 0; o < out; ++o) {
      double z = b[o];
      for (std::size_t i = 0; i < in; ++i) z += w[o * in + i] * x[i];
      y[o] = act ? activate(hidden_, z) : z;
    }
    offset += in * out + out;
  }
}

void Mlp::backward(std::span<const double> params, const Cache& cache,
                   std::span<const double> d_output, std::span<double> grad,
                   std::span<double> d_input) const {
  const std::size_t n_layers = sizes_.size() - 1;
  std::vector<std::size_t> offsets(n_layers, 0);
  for (std::size_t l = 1; l < n_layers; ++l) {
    offsets[l] = offsets[l - 1] + sizes_[l - 1] * sizes_[l] + sizes_[l];
  }

  // delta = d loss / d pre-activation of the current layer.
  std::vector<double> delta(d_output.begin(), d_output.end());
  if (activate_last_) {
    const auto& y = cache.values.back();
    for (std::size_t o = 0; o < delta.size(); ++o) delta[o] *= activate_grad(hidden_, y[o]);
  }
  for (std::size_t l = n_layers; l-- > 0;) {
    const std::size_t in = sizes_[l];
    const std::size_t out = sizes_[l + 1];
    const double* w = params.data() + offsets[l];
    double* gw = grad.data() + offsets[l];
    double* gb = gw + in * out;
    const auto& x = cache.values[l];
    for (std::size_t o = 0; o < out; ++o) {
      for (std::size_t i = 0; i < in; ++i) gw[o * in + i] += delta[o] * x[i];
      gb[o] += delta[o];
    }
    if (l == 0 && d_input.empty()) break;
    std::vector<double> prev(in, 0.0);
    for (std::size_t o = 0; o < out; ++o) {
      for (std::size_t i = 0; i < in; ++i) prev[i] += w[o * in + i] * delta[o];
    }
    if (l == 0) {
      std::copy(prev.begin(), prev.end(), d_input.begin());
      break;
    }
    for (std::size_t i = 0; i < in; ++i) prev[i] *= activate_grad(hidden_, x[i]);
    delta = std::move(prev);
  }
}

std::size_t dense_param_count(std::span<const std::size_t> layer_sizes) {
  std::size_t total = 0;
  for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
    total += layer_sizes[l] * layer_sizes[l + 1] + layer_sizes[l + 1];
  }
  return total;
}

DenseNet::DenseNet(std::vector<std::size_t> layer_sizes, Activation hidden)
    : activation_(hidden) {
  if (layer_sizes.size() < 2) throw std::invalid_argument("need input and output sizes");
  if (layer_sizes.front() != 2 && layer_sizes.front() != 8) {
    throw std::invalid_argument("dense net input must be 2 (raw) or 8 (orbit copies)");
  }
  if (layer_sizes.back() != 2) throw std::invalid_argument("dense net output must be 2");
  encoding_ = layer_sizes.front() == 8 ? InputEncoding::OrbitConcat : InputEncoding::Raw;
  mlp_ = Mlp(std::move(layer_sizes), hidden, false);
  params_.assign(mlp_.param_count(), 0.0);
}

void DenseNet::initialize(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  uniform_fan_in_init(mlp_, params_, rng);
}

std::vector<double> DenseNet::encode(Point2 p) const {
  if (encoding_ == InputEncoding::Raw) return {p.x1, p.x2};
  std::vector<double> in;
  in.reserve(8);
  for (TransformKind t : orbit_transforms(OrbitGroup::Full)) {
    const Point2 q = apply_transform(t, p);
    in.push_back(q.x1);
    in.push_back(q.x2);
  }
  return in;
}

std::vector<TransformKind> orbit_transforms(OrbitGroup group) {
  if (group == OrbitGroup::DiagSwapOnly) {
    return {TransformKind::Identity, TransformKind::DiagSwap};
  }
  return {TransformKind::Identity, TransformKind::DiagSwap, TransformKind::AntiDiagNegSwap,
          TransformKind::Both};
}

EnnNet::EnnNet(OrbitGroup group, std::size_t equivariant_width,
               std::vector<std::size_t> head_hidden, Activation hidden)
    : group_(group), activation_(hidden) {
  orbit_layer_ = Mlp({2, equivariant_width}, hidden, true);
  std::vector<std::size_t> head_sizes{equivariant_width};
  head_sizes.insert(head_sizes.end(), head_hidden.begin(), head_hidden.end());
  head_sizes.push_back(2);
  head_ = Mlp(std::move(head_sizes), hidden, false);
  params_.assign(orbit_layer_.param_count() + head_.param_count(), 0.0);
}

std::vector<std::size_t> EnnNet::head_hidden() const {
  const auto& s = head_.sizes();
  return {s.begin() + 1, s.end() - 1};
}

void EnnNet::initialize(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::span<double> all(params_);
  uniform_fan_in_init(orbit_layer_, all.first(orbit_layer_.param_count()), rng);
  uniform_fan_in_init(head_, all.subspan(orbit_layer_.param_count()), rng);
}

namespace {

// Shared forward for the ENN; fills the per-copy caches and the head cache.
void enn_forward_cached(const EnnNet& net, Point2 p, std::vector<Mlp::Cache>& copies,
                        Mlp::Cache& head_cache) {
  const auto transforms = orbit_transforms(net.group());
  const auto params = net.params();
  const auto orbit_params = params.first(net.orbit_layer().param_count());
  const auto head_params = params.subspan(net.orbit_layer().param_count());
  copies.resize(transforms.size());
  std::vector<double> pooled(net.equivariant_width(), 0.0);
  for (std::size_t k = 0; k < transforms.size(); ++k) {
    const Point2 q = apply_transform(transforms[k], p);
    const double in[2] = {q.x1, q.x2};
    net.orbit_layer().forward(orbit_params, in, copies[k]);
    const auto& h = copies[k].values.back();
    for (std::size_t j = 0; j < pooled.size(); ++j) pooled[j] += h[j];
  }
  for (double& v : pooled) v /= static_cast<double>(transforms.size());
  net.head().forward(head_params, pooled, head_cache);
}

}  // namespace

Probs dnn_forward(const DenseNet& net, Point2 p) {
  Mlp::Cache cache;
  net.mlp().forward(net.params(), net.encode(p), cache);
  return softmax2(cache.values.back());
}

Probs enn_forward(const EnnNet& net, Point2 p) {
  std::vector<Mlp::Cache> copies;
  Mlp::Cache head_cache;
  enn_forward_cached(net, p, copies, head_cache);
  return softmax2(head_cache.values.back());
}

double bce(const Probs& probs, int y) {
  check_label(y);
  return -std::log(std::max(probs[static_cast<std::size_t>(y)], 1e-300));
}

double loss_and_gradient(const DenseNet& net, Point2 p, int y, std::span<double> grad) {
  check_label(y);
  if (grad.size() != net.param_count()) throw std::invalid_argument("gradient length mismatch");
  std::fill(grad.begin(), grad.end(), 0.0);
  Mlp::Cache cache;
  net.mlp().forward(net.params(), net.encode(p), cache);
  const auto& logits = cache.values.back();
  const Probs probs = softmax2(logits);
  const double d_logits[2] = {probs[0] - (y == 0 ? 1.0 : 0.0), probs[1] - (y == 1 ? 1.0 : 0.0)};
  net.mlp().backward(net.params(), cache, d_logits, grad);
  return log_loss(logits, y);
}

double loss_and_gradient(const EnnNet& net, Point2 p, int y, std::span<double> grad) {
  check_label(y);
  if (grad.size() != net.param_count()) throw std::invalid_argument("gradient length mismatch");
  std::fill(grad.begin(), grad.end(), 0.0);
  std::vector<Mlp::Cache> copies;
  Mlp::Cache head_cache;
  enn_forward_cached(net, p, copies, head_cache);

  const auto params = net.params();
  const std::size_t n_orbit = net.orbit_layer().param_count();
  const auto& logits = head_cache.values.back();
  const Probs probs = softmax2(logits);
  const double d_logits[2] = {probs[0] - (y == 0 ? 1.0 : 0.0), probs[1] - (y == 1 ? 1.0 : 0.0)};

  std::vector<double> d_pooled(net.equivariant_width(), 0.0);
  net.head().backward(params.subspan(n_orbit), head_cache, d_logits, grad.subspan(n_orbit),
                      d_pooled);
  for (double& v : d_pooled) v /= static_cast<double>(copies.size());
  for (const auto& cache : copies) {
    net.orbit_layer().backward(params.first(n_orbit), cache, d_pooled, grad.first(n_orbit));
  }
  return log_loss(logits, y);
}

std::vector<double> backward(const DenseNet& net, Point2 p, int y) {
  std::vector<double> g(net.param_count());
  loss_and_gradient(net, p, y, g);
  return g;
}

std::vector<double> backward(const EnnNet& net, Point2 p, int y) {
  std::vector<double> g(net.param_count());
  loss_and_gradient(net, p, y, g);
  return g;
}

std::vector<std::size_t> widths_for_param_budget(std::size_t target, std::size_t hidden_layers) {
  if (hidden_layers == 0) throw std::invalid_argument("need at least one hidden layer");
  std::vector<std::size_t> ones(hidden_layers, 1);
  std::vector<std::size_t> sizes{2};
  sizes.insert(sizes.end(), ones.begin(), ones.end());
  sizes.push_back(2);
  if (dense_param_count(sizes) > target) {
    throw std::invalid_argument("parameter budget " + std::to_string(target) +
                                " is below the smallest net with " +
                                std::to_string(hidden_layers) + " hidden layer(s) (" +
                                std::to_string(dense_param_count(sizes)) + ")");
  }

  // Enumerate every hidden layer but the last; the count is affine in the
  // last width w: prefix + w * (prev + 3) + 2, so solve for it directly.
  std::vector<std::size_t> prefix;
  std::vector<std::size_t> best_widths;
  BudgetKey best{};
  bool have = false;

  const auto consider = [&](std::size_t prefix_count) {
    const std::size_t prev = prefix.empty() ? 2 : prefix.back();
    if (prefix_count + 2 + (prev + 3) > target) return;
    const std::size_t last = (target - prefix_count - 2) / (prev + 3);
    std::vector<std::size_t> widths = prefix;
    widths.push_back(last);
    const std::size_t count = prefix_count + last * (prev + 3) + 2;
    BudgetKey key = budget_key(count, widths);
    if (!have || key > best) {
      best = std::move(key);
      best_widths = std::move(widths);
      have = true;
    }
  };

  // Depth-first over prefixes; prefix_count excludes the last hidden layer
  // and the output layer.
  const auto recurse = [&](auto&& self, std::size_t prefix_count) -> void {
    if (prefix.size() + 1 == hidden_layers) {
      consider(prefix_count);
      return;
    }
    const std::size_t prev = prefix.empty() ? 2 : prefix.back();
    for (std::size_t w = 1;; ++w) {
      const std::size_t c = prefix_count + prev * w + w;
      // Cheapest completion: remaining layers of width 1 plus the output.
      const std::size_t remaining = hidden_layers - prefix.size() - 1;
      const std::size_t min_tail = w * 1 + 1 + (remaining - 1) * 2 + 1 * 2 + 2;
      if (c + min_tail > target) break;
      prefix.push_back(w);
      self(self, c);
      prefix.pop_back();
    }
  };
  recurse(recurse, 0);
  if (!have) throw std::invalid_argument("no architecture fits the parameter budget");
  return best_widths;
}

DenseNet make_dnn_with_param_budget(std::size_t target, std::size_t hidden_layers,
                                    Activation hidden) {
  std::vector<std::size_t> sizes{2};
  const auto widths = widths_for_param_budget(target, hidden_layers);
  sizes.insert(sizes.end(), widths.begin(), widths.end());
  sizes.push_back(2);
  return DenseNet(std::move(sizes), hidden);
}

EnnNet make_enn_with_param_budget(std::size_t target, OrbitGroup group, Activation hidden) {
  // count = 3e + d (e + 3) + 2 for orbit width e and head width d.
  constexpr std::size_t kMin = 3 + 4 + 2;
  if (target < kMin) {
    throw std::invalid_argument("parameter budget below the smallest ENN (" +
                                std::to_string(kMin) + ")");
  }
  BudgetKey best{};
  std::vector<std::size_t> best_widths;
  for (std::size_t e = 1; 3 * e + (e + 3) + 2 <= target; ++e) {
    const std::size_t d = (target - 3 * e - 2) / (e + 3);
    std::vector<std::size_t> widths{e, d};
    BudgetKey key = budget_key(3 * e + d * (e + 3) + 2, widths);
    if (best_widths.empty() || key > best) {
      best = std::move(key);
      best_widths = std::move(widths);
    }
  }
  return EnnNet(group, best_widths[0], {best_widths[1]}, hidden);
}

}  // namespace eqnn
