#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "eqnn/classical_models.hpp"
#include "eqnn/verification.hpp"

using namespace eqnn;

namespace {

Point2 random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double a = u(rng);
  return {a, u(rng)};
}

void randomize(std::span<double> params, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (double& v : params) v = u(rng);
}

template <class Net>
std::vector<double> finite_difference(Net net, Point2 p, int y) {
  std::vector<double> g(net.param_count()), scratch(net.param_count());
  auto params = net.params();
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double keep = params[i];
    params[i] = keep + 1e-5;
    const double up = loss_and_gradient(net, p, y, scratch);
    params[i] = keep - 1e-5;
    const double down = loss_and_gradient(net, p, y, scratch);
    params[i] = keep;
    g[i] = (up - down) / 2e-5;
  }
  return g;
}

}  // namespace

TEST(DenseNet, ParamCountFormula) {
  EXPECT_EQ(DenseNet({2, 4, 2}).param_count(), 22u);
  EXPECT_EQ(DenseNet({2, 4, 4, 2}).param_count(), 42u);
  const std::vector<std::size_t> sizes{8, 5, 3, 2};
  EXPECT_EQ(DenseNet(sizes).param_count(), dense_param_count(sizes));
  EXPECT_EQ(DenseNet(sizes).encoding(), InputEncoding::OrbitConcat);
  EXPECT_THROW(DenseNet({3, 4, 2}), std::invalid_argument);
  EXPECT_THROW(DenseNet({2, 4, 3}), std::invalid_argument);
}

TEST(DenseNet, ZeroWeightsGiveHalf) {
  DenseNet net({2, 4, 4, 2});
  const Probs p = dnn_forward(net, {0.3, -0.9});
  EXPECT_DOUBLE_EQ(p[0], 0.5);
  EXPECT_DOUBLE_EQ(p[1], 0.5);
}

TEST(DenseNet, SoftmaxSumsToOne) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 100; ++t) {
    DenseNet net({2, 5, 3, 2});
    randomize(net.params(), rng);
    for (double& v : net.params()) v *= 10.0;
    const Probs p = dnn_forward(net, random_point(rng));
    EXPECT_NEAR(p[0] + p[1], 1.0, 1e-12);
    EXPECT_GE(p[0], 0.0);
    EXPECT_GE(p[1], 0.0);
  }
}

TEST(DenseNet, InitializationBoundsAndDeterminism) {
  DenseNet a({2, 6, 2}), b({2, 6, 2});
  a.initialize(5);
  b.initialize(5);
  EXPECT_EQ(std::vector<double>(a.params().begin(), a.params().end()),
            std::vector<double>(b.params().begin(), b.params().end()));
  for (std::size_t i = 0; i < 18; ++i) EXPECT_LE(std::abs(a.params()[i]), 1.0 / std::sqrt(2.0));
  for (std::size_t i = 18; i < a.param_count(); ++i) {
    EXPECT_LE(std::abs(a.params()[i]), 1.0 / std::sqrt(6.0));
  }
}

TEST(EnnNet, ExactInvarianceForAnyWeights) {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 50; ++t) {
    EnnNet net(OrbitGroup::Full, 3, {4});
    randomize(net.params(), rng);
    const Point2 p = random_point(rng);
    const Probs base = enn_forward(net, p);
    for (TransformKind k :
         {TransformKind::DiagSwap, TransformKind::AntiDiagNegSwap, TransformKind::Both}) {
      const Probs q = enn_forward(net, apply_transform(k, p));
      EXPECT_NEAR(q[1], base[1], 1e-12);
    }
  }
}

TEST(EnnNet, DiagSwapOnlyGroup) {
  std::mt19937_64 rng(33);
  EnnNet net(OrbitGroup::DiagSwapOnly, 2, {4});
  randomize(net.params(), rng);
  const Point2 p{0.3, -0.7};
  EXPECT_NEAR(enn_forward(net, {p.x2, p.x1})[1], enn_forward(net, p)[1], 1e-12);
  EXPECT_EQ(orbit_transforms(OrbitGroup::DiagSwapOnly).size(), 2u);
  EXPECT_EQ(orbit_transforms(OrbitGroup::Full).size(), 4u);
}

TEST(EnnNet, ZeroWeightsGiveHalf) {
  EnnNet net(OrbitGroup::Full, 3, {4});
  EXPECT_DOUBLE_EQ(enn_forward(net, {0.1, 0.2})[1], 0.5);
  EXPECT_EQ(net.param_count(), 3u * 2 + 3 + 4u * 3 + 4 + 2u * 4 + 2);
}

TEST(Backprop, MatchesFiniteDifferences) {
  std::mt19937_64 rng(34);
  for (int t = 0; t < 50; ++t) {
    std::vector<std::size_t> sizes{t % 2 ? 8u : 2u, 1u + t % 5, 1u + t % 3, 2};
    DenseNet dnn(sizes, t % 3 ? Activation::Tanh : Activation::Sigmoid);
    randomize(dnn.params(), rng);
    const Point2 p = random_point(rng);
    const int y = t % 2;
    EXPECT_LE(relative_error(backward(dnn, p, y), finite_difference(dnn, p, y)), 1e-5);

    EnnNet enn(t % 2 ? OrbitGroup::Full : OrbitGroup::DiagSwapOnly, 1 + t % 4, {1u + t % 3});
    randomize(enn.params(), rng);
    EXPECT_LE(relative_error(backward(enn, p, y), finite_difference(enn, p, y)), 1e-5);
  }
}

TEST(Backprop, SaturatedTrueClassHasTinyGradient) {
  DenseNet net({2, 2, 2});
  auto w = net.params();
  // Output bias pushes class 1 to probability ~1.
  w[w.size() - 1] = 40.0;
  w[w.size() - 2] = -40.0;
  const auto g = backward(net, {0.2, 0.4}, 1);
  double norm = 0.0;
  for (double v : g) norm += v * v;
  EXPECT_LT(std::sqrt(norm), 1e-6);
}

TEST(Backprop, ZeroInputGivesZeroFirstLayerWeightGradient) {
  std::mt19937_64 rng(35);
  DenseNet net({2, 3, 2});
  randomize(net.params(), rng);
  for (std::size_t i = 6; i < 9; ++i) net.params()[i] = 0.0;  // first-layer biases
  const auto g = backward(net, {0.0, 0.0}, 1);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(g[i], 0.0);
}

TEST(Bce, Values) {
  EXPECT_NEAR(bce({0.5, 0.5}, 1), std::log(2.0), 1e-15);
  EXPECT_NEAR(bce({0.9, 0.1}, 0), -std::log(0.9), 1e-15);
}

TEST(ParamBudget, Examples) {
  EXPECT_EQ(widths_for_param_budget(22, 1), std::vector<std::size_t>{4});
  const auto w = widths_for_param_budget(37, 2);
  ASSERT_EQ(w.size(), 2u);
  const std::vector<std::size_t> sizes{2, w[0], w[1], 2};
  EXPECT_LE(dense_param_count(sizes), 37u);
  const DenseNet big = make_dnn_with_param_budget(1000000, 2);
  EXPECT_EQ(big.param_count(), dense_param_count(big.layer_sizes()));
  EXPECT_LE(big.param_count(), 1000000u);
  EXPECT_GT(big.param_count(), 990000u);
  EXPECT_THROW(widths_for_param_budget(6, 1), std::invalid_argument);
}

TEST(ParamBudget, ExactWhenPossibleElseLargestBelow) {
  for (std::size_t target = 7; target <= 200; ++target) {
    for (std::size_t layers = 1; layers <= 2; ++layers) {
      std::vector<std::size_t> w;
      try {
        w = widths_for_param_budget(target, layers);
      } catch (const std::invalid_argument&) {
        continue;
      }
      std::vector<std::size_t> sizes{2};
      sizes.insert(sizes.end(), w.begin(), w.end());
      sizes.push_back(2);
      const std::size_t got = dense_param_count(sizes);
      ASSERT_LE(got, target);
      // Brute force: no width choice lands strictly between got and target.
      for (std::size_t a = 1; a <= target; ++a) {
        if (layers == 1) {
          const std::size_t c = dense_param_count(std::vector<std::size_t>{2, a, 2});
          ASSERT_FALSE(c > got && c <= target) << target;
        } else {
          for (std::size_t b = 1; b <= target; ++b) {
            const std::size_t c = dense_param_count(std::vector<std::size_t>{2, a, b, 2});
            ASSERT_FALSE(c > got && c <= target) << target;
          }
        }
      }
    }
  }
}

TEST(ParamBudget, Enn) {
  const EnnNet net = make_enn_with_param_budget(35, OrbitGroup::Full);
  EXPECT_LE(net.param_count(), 35u);
  EXPECT_THROW(make_enn_with_param_budget(5, OrbitGroup::Full), std::invalid_argument);
}
