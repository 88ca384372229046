// Small feed-forward classifiers: a plain dense net (DNN) and an
// orbit-averaged invariant net (ENN), both with a 2-way softmax head trained
// on binary cross-entropy against the one-hot label (1 - y, y).
//
// Parameter layout (the canonical gradient order): layer by layer, each
// layer's weight matrix row-major as (fan_out x fan_in), then its bias
// vector. The ENN stores its shared orbit layer first, then the head.
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "eqnn/point.hpp"
#include "eqnn/symmetry.hpp"

namespace eqnn {

enum class Activation { Tanh, Sigmoid, Relu };

const char* to_string(Activation a);
Activation parse_activation(std::string_view text);

using Probs = std::array<double, 2>;

/// Fully connected stack; hidden layers use `hidden`, the last layer is
/// activated only when `activate_last` is set.
class Mlp {
 public:
  struct Cache {
    // values[0] = input, values[l + 1] = output of layer l (post-activation
    // where an activation applies).
    std::vector<std::vector<double>> values;
  };

  Mlp() = default;
  Mlp(std::vector<std::size_t> sizes, Activation hidden, bool activate_last);

  const std::vector<std::size_t>& sizes() const { return sizes_; }
  std::size_t param_count() const;

  void forward(std::span<const double> params, std::span<const double> input,
               Cache& cache) const;
  /// Accumulates d loss / d params into `grad` given d loss / d output.
  /// Fills d loss / d input when `d_input` is non-empty.
  void backward(std::span<const double> params, const Cache& cache,
                std::span<const double> d_output, std::span<double> grad,
                std::span<double> d_input = {}) const;

 private:
  std::vector<std::size_t> sizes_;
  Activation hidden_ = Activation::Tanh;
  bool activate_last_ = false;
};

/// sum over layers of fan_in * fan_out + fan_out.
std::size_t dense_param_count(std::span<const std::size_t> layer_sizes);

/// Input encodings for the dense net: the raw point (2 inputs) or the four
/// Z2 x Z2 images of the point concatenated (8 inputs).
enum class InputEncoding { Raw, OrbitConcat };

class DenseNet {
 public:
  /// layer_sizes = {2 or 8, hidden..., 2}; input 8 selects OrbitConcat.
  explicit DenseNet(std::vector<std::size_t> layer_sizes,
                    Activation hidden = Activation::Tanh);

  const std::vector<std::size_t>& layer_sizes() const { return mlp_.sizes(); }
  InputEncoding encoding() const { return encoding_; }
  Activation activation() const { return activation_; }
  std::size_t param_count() const { return params_.size(); }
  std::span<double> params() { return params_; }
  std::span<const double> params() const { return params_; }

  /// Weights and biases uniform on [-1/sqrt(fan_in), 1/sqrt(fan_in)].
  void initialize(std::uint64_t seed);

  std::vector<double> encode(Point2 p) const;
  const Mlp& mlp() const { return mlp_; }

 private:
  Mlp mlp_;
  Activation activation_;
  InputEncoding encoding_;
  std::vector<double> params_;
};

enum class OrbitGroup { DiagSwapOnly, Full };

/// The group images averaged over: {Identity, DiagSwap} or all four.
std::vector<TransformKind> orbit_transforms(OrbitGroup group);

/// Invariant net: a shared tanh layer (2 -> width) applied to every orbit
/// image, mean-pooled, then a dense head (width -> head_hidden... -> 2).
class EnnNet {
 public:
  EnnNet(OrbitGroup group, std::size_t equivariant_width,
         std::vector<std::size_t> head_hidden, Activation hidden = Activation::Tanh);

  OrbitGroup group() const { return group_; }
  std::size_t equivariant_width() const { return orbit_layer_.sizes().back(); }
  std::vector<std::size_t> head_hidden() const;
  Activation activation() const { return activation_; }
  std::size_t param_count() const { return params_.size(); }
  std::span<double> params() { return params_; }
  std::span<const double> params() const { return params_; }

  void initialize(std::uint64_t seed);

  const Mlp& orbit_layer() const { return orbit_layer_; }
  const Mlp& head() const { return head_; }

 private:
  OrbitGroup group_;
  Activation activation_;
  Mlp orbit_layer_;
  Mlp head_;
  std::vector<double> params_;
};

/// Softmax probabilities; p0 + p1 = 1.
Probs dnn_forward(const DenseNet& net, Point2 p);
Probs enn_forward(const EnnNet& net, Point2 p);

/// -log p_y.
double bce(const Probs& probs, int y);

/// Exact gradient of bce(forward(p), y) in the canonical parameter order.
/// Returns the loss.
double loss_and_gradient(const DenseNet& net, Point2 p, int y, std::span<double> grad);
double loss_and_gradient(const EnnNet& net, Point2 p, int y, std::span<double> grad);

std::vector<double> backward(const DenseNet& net, Point2 p, int y);
std::vector<double> backward(const EnnNet& net, Point2 p, int y);

/// Hidden widths (hidden_layers of them) for a 2 -> ... -> 2 net whose
/// parameter count equals `target` when possible, else the largest count
/// below it. Among equal counts the widest bottleneck wins, then the most
/// balanced widths, then wider earlier layers. Throws std::invalid_argument
/// if even all-ones widths exceed the target.
std::vector<std::size_t> widths_for_param_budget(std::size_t target, std::size_t hidden_layers);
DenseNet make_dnn_with_param_budget(std::size_t target, std::size_t hidden_layers,
                                    Activation hidden = Activation::Tanh);

/// ENN with one head layer: chooses (equivariant width, head width) by the
/// same rules.
EnnNet make_enn_with_param_budget(std::size_t target, OrbitGroup group,
                                  Activation hidden = Activation::Tanh);

}  // namespace eqnn
