#include "eqnn/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>

#include "eqnn/classical_models.hpp"
#include "eqnn/datasets.hpp"
#include "eqnn/metrics.hpp"
#include "eqnn/quantum_models.hpp"
#include "eqnn/symmetry.hpp"
#include "eqnn/training.hpp"

namespace eqnn {
namespace {

constexpr double kSymTol = 1e-10;
constexpr double kGradTol = 1e-5;
constexpr double kFdStep = 1e-5;
constexpr double kAucTol = 1e-12;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

CheckResult at_most(std::string name, double error, double tol) {
  return {std::move(name), error <= tol, error, tol};
}

CheckResult at_least(std::string name, double value, double floor) {
  // Expected mismatch: passes when the deviation is clearly nonzero.
  return {std::move(name), value > floor, value, floor};
}

Point2 random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double a = u(rng);
  return {a, u(rng)};
}

std::vector<double> finite_difference(const AnyModel& model, Point2 p, int y) {
  AnyModel probe = model;
  auto params = parameters(probe);
  std::vector<double> g(params.size());
  std::vector<double> scratch(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double keep = params[i];
    params[i] = keep + kFdStep;
    const double up = loss_and_gradient(probe, p, y, scratch);
    params[i] = keep - kFdStep;
    const double down = loss_and_gradient(probe, p, y, scratch);
    params[i] = keep;
    g[i] = (up - down) / (2.0 * kFdStep);
  }
  return g;
}

double gradient_error(const AnyModel& model, Point2 p, int y) {
  std::vector<double> g(param_count(model));
  loss_and_gradient(model, p, y, g);
  return relative_error(g, finite_difference(model, p, y));
}

void randomize(std::span<double> params, std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  for (double& v : params) v = u(rng);
}

}  // namespace

double relative_error(const std::vector<double>& a, const std::vector<double>& b) {
  double diff = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff = std::max(diff, std::abs(a[i] - b[i]));
    scale = std::max({scale, std::abs(a[i]), std::abs(b[i])});
  }
  if (a.size() != b.size()) return INFINITY;
  return scale == 0.0 ? diff : diff / scale;
}

std::vector<CheckResult> run_symmetry_suite(std::uint64_t seed) {
  std::vector<CheckResult> out;
  const auto reps = builtin_reps();

  // Gate equivariance of every EQNN block gate under S, A and SA.
  for (const auto& rep : reps) {
    out.push_back(at_most("gate RX(x)RX shared commutes with " + rep.name,
                          check_gate_equivariance(Gate::rx(0, 0.0), rep), kSymTol));
    out.push_back(at_most("gate RZZ commutes with " + rep.name,
                          check_gate_equivariance(Gate::rzz(0, 1, 0.0), rep), kSymTol));
  }
  out.push_back(at_least("gate RZ(x)RZ does not commute with A",
                         check_gate_equivariance(Gate::rz(0, 0.0), rep_for(TransformKind::Both)),
                         1e-3));

  // The preparation state is fixed by every rep.
  {
    StateVector plus(2);
    plus.apply(Gate::ry(0, std::numbers::pi / 2));
    plus.apply(Gate::ry(1, std::numbers::pi / 2));
    const auto amps = plus.amplitudes();
    const Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(amps.data(), 4);
    for (const auto& rep : reps) {
      out.push_back(at_most("prep |++> fixed by " + rep.name,
                            (rep.matrix * v - v).cwiseAbs().maxCoeff(), kSymTol));
    }
  }

  // Observable identities.
  const UnitaryRep& s_rep = rep_for(TransformKind::DiagSwap);
  const UnitaryRep& a_rep = rep_for(TransformKind::Both);
  for (const auto& rep : reps) {
    out.push_back(at_most("symmetric O invariant under " + rep.name,
                          max_abs_diff(conjugate_observable(symmetric_observable(), rep).matrix(),
                                       symmetric_observable().matrix()),
                          kSymTol));
  }
  out.push_back(at_most("U_gr^dag O1 U_gr = O2 (anti-symmetric pair, U_gr = A)",
                        max_abs_diff(conjugate_observable(antisymmetric_o1(), a_rep).matrix(),
                                     antisymmetric_o2().matrix()),
                        kSymTol));
  for (const auto& rep : reps) {
    const double invariance =
        std::max(max_abs_diff(conjugate_observable(antisymmetric_o1(), rep).matrix(),
                              rep.transform == TransformKind::DiagSwap
                                  ? antisymmetric_o1().matrix()
                                  : antisymmetric_o2().matrix()),
                 0.0);
    out.push_back(at_most(std::string("anti-symmetric O1 under ") + rep.name +
                              (rep.transform == TransformKind::DiagSwap ? " -> O1" : " -> O2"),
                          invariance, kSymTol));
  }
  out.push_back(at_most("SWAP^dag O1 SWAP = O2 (fully anti-symmetric pair)",
                        max_abs_diff(conjugate_observable(fully_antisymmetric_o1(), s_rep).matrix(),
                                     fully_antisymmetric_o2().matrix()),
                        kSymTol));
  {
    const UnitaryRep& sa_rep = rep_for(TransformKind::AntiDiagNegSwap);
    out.push_back(at_most("SA^dag O1 SA = O2 (fully anti-symmetric pair)",
                          max_abs_diff(conjugate_observable(fully_antisymmetric_o1(), sa_rep).matrix(),
                                       fully_antisymmetric_o2().matrix()),
                          kSymTol));
    out.push_back(at_most("A^dag O1 A = O1 (fully anti-symmetric pair)",
                          max_abs_diff(conjugate_observable(fully_antisymmetric_o1(), a_rep).matrix(),
                                       fully_antisymmetric_o1().matrix()),
                          kSymTol));
  }

  // Embedding-intertwiner table: each rep matches exactly its own transform.
  std::mt19937_64 rng(seed);
  std::vector<Point2> samples;
  for (int i = 0; i < 64; ++i) samples.push_back(random_point(rng));
  for (const auto& rep : reps) {
    for (TransformKind t : {TransformKind::DiagSwap, TransformKind::AntiDiagNegSwap,
                            TransformKind::Both}) {
      const double dev = check_embedding_intertwiner(rep, t, samples);
      const std::string name = "intertwiner " + rep.name + " ~ " + to_string(t);
      out.push_back(t == rep.transform ? at_most(name, dev, kSymTol) : at_least(name, dev, 1e-3));
    }
  }

  // EQNN output symmetries for random parameters and points.
  for (DatasetKind ds : {DatasetKind::Symmetric, DatasetKind::AntiSymmetric,
                         DatasetKind::FullyAntiSymmetric}) {
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      QuantumModel m = make_eqnn(ds, 1 + trial % 6);
      randomize(m.params, rng, 0.0, kTwoPi);
      for (int k = 0; k < 20; ++k) {
        const Point2 p = random_point(rng);
        const Scores s = forward(m, p);
        const Scores sd = forward(m, apply_transform(TransformKind::DiagSwap, p));
        const Scores sa = forward(m, apply_transform(TransformKind::AntiDiagNegSwap, p));
        const Scores sb = forward(m, apply_transform(TransformKind::Both, p));
        switch (ds) {
          case DatasetKind::Symmetric:
            worst = std::max({worst, std::abs(sd.value[0] - s.value[0]),
                              std::abs(sa.value[0] - s.value[0]),
                              std::abs(sb.value[0] - s.value[0])});
            break;
          case DatasetKind::AntiSymmetric:
            worst = std::max({worst, std::abs(sa.value[0] - s.value[1]),
                              std::abs(sa.value[1] - s.value[0]),
                              std::abs(sd.value[0] - s.value[0]),
                              std::abs(sd.value[1] - s.value[1])});
            break;
          case DatasetKind::FullyAntiSymmetric:
            worst = std::max({worst, std::abs(sd.value[0] - s.value[1]),
                              std::abs(sa.value[0] - s.value[1]),
                              std::abs(sb.value[0] - s.value[0])});
            break;
        }
      }
    }
    out.push_back(at_most(std::string("EQNN output symmetry, ") + to_string(ds), worst, kSymTol));
  }

  // Dataset labels respect the group action on a grid.
  for (DatasetKind ds : {DatasetKind::Symmetric, DatasetKind::AntiSymmetric,
                         DatasetKind::FullyAntiSymmetric}) {
    const SymmetryReport r = verify_dataset_symmetry(ds, 201);
    out.push_back(at_most(std::string("dataset grid symmetry, ") + to_string(ds),
                          static_cast<double>(r.total_violations()), 0.0));
  }
  return out;
}

std::vector<CheckResult> run_gradient_suite(std::uint64_t seed, std::size_t configs) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> pick_ds(0, 2);
  const DatasetKind kinds[] = {DatasetKind::Symmetric, DatasetKind::AntiSymmetric,
                               DatasetKind::FullyAntiSymmetric};

  double qnn = 0.0, eqnn = 0.0, dnn = 0.0, enn = 0.0;
  for (std::size_t c = 0; c < configs; ++c) {
    const DatasetKind ds = kinds[pick_ds(rng)];
    const int depth = 1 + static_cast<int>(c % 6);
    {
      QuantumModel m = make_qnn(ds, depth);
      randomize(m.params, rng, 0.0, kTwoPi);
      qnn = std::max(qnn, gradient_error(m, random_point(rng), coin(rng)));
    }
    {
      QuantumModel m = make_eqnn(ds, depth);
      randomize(m.params, rng, 0.0, kTwoPi);
      eqnn = std::max(eqnn, gradient_error(m, random_point(rng), coin(rng)));
    }
    {
      std::uniform_int_distribution<std::size_t> width(1, 6), layers(1, 3);
      std::vector<std::size_t> sizes{coin(rng) ? 8u : 2u};
      for (std::size_t l = layers(rng); l > 0; --l) sizes.push_back(width(rng));
      sizes.push_back(2);
      DenseNet net(sizes, coin(rng) ? Activation::Tanh : Activation::Sigmoid);
      randomize(net.params(), rng, -1.5, 1.5);
      dnn = std::max(dnn, gradient_error(net, random_point(rng), coin(rng)));
    }
    {
      std::uniform_int_distribution<std::size_t> width(1, 6), layers(0, 2);
      std::vector<std::size_t> head;
      for (std::size_t l = layers(rng); l > 0; --l) head.push_back(width(rng));
      EnnNet net(coin(rng) ? OrbitGroup::Full : OrbitGroup::DiagSwapOnly, width(rng), head);
      randomize(net.params(), rng, -1.5, 1.5);
      enn = std::max(enn, gradient_error(net, random_point(rng), coin(rng)));
    }
  }
  const std::string n = std::to_string(configs);
  return {at_most("parameter-shift vs finite differences, QNN (" + n + " configs)", qnn, kGradTol),
          at_most("parameter-shift vs finite differences, EQNN (" + n + " configs)", eqnn, kGradTol),
          at_most("backprop vs finite differences, DNN (" + n + " configs)", dnn, kGradTol),
          at_most("backprop vs finite differences, ENN (" + n + " configs)", enn, kGradTol)};
}

std::vector<CheckResult> run_auc_suite(std::uint64_t seed, std::size_t instances) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size(2, 400);
  std::uniform_int_distribution<int> levels(2, 12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (std::size_t k = 0; k < instances; ++k) {
    const std::size_t n = size(rng);
    // Every third instance draws scores from a few levels, forcing ties.
    const int q = k % 3 == 0 ? levels(rng) : 0;
    std::vector<double> scores(n);
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
      labels[i] = u(rng) < 0.5 ? 1 : 0;
      const double s = u(rng) + 0.3 * labels[i];
      scores[i] = q > 0 ? std::floor(s * q) / q : s;
    }
    labels[0] = 0;
    labels[1] = 1;
    worst = std::max(worst, std::abs(auc(roc(scores, labels)) - auc_oracle(scores, labels)));
  }
  return {at_most("trapezoid AUC vs pairwise oracle (" + std::to_string(instances) + " instances)",
                  worst, kAucTol)};
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
}

void print_report(std::ostream& out, const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e (tol %.1e)", r.error, r.tolerance);
    out << (r.passed ? "PASS " : "FAIL ") << r.name << "  " << buf << '\n';
  }
}

}  // namespace eqnn
