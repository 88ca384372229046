#include "eqnn/metrics.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "eqnn/csv.hpp"

namespace eqnn {
namespace {

void check_binary(std::span<const double> scores, std::span<const int> labels,
                  std::size_t& positives, std::size_t& negatives) {
  if (scores.size() != labels.size()) {
    throw std::invalid_argument("scores and labels differ in length");
  }
  positives = 0;
  negatives = 0;
  for (int y : labels) {
    if (y == 1) {
      ++positives;
    } else if (y == 0) {
      ++negatives;
    } else {
      throw std::invalid_argument("labels must be 0 or 1");
    }
  }
  if (positives == 0 || negatives == 0) {
    throw std::invalid_argument("ROC/AUC needs both classes present");
  }
}

}  // namespace

RocCurve roc(std::span<const double> scores, std::span<const int> labels) {
  std::size_t positives = 0;
  std::size_t negatives = 0;
  check_binary(scores, labels, positives, negatives);

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  RocCurve curve;
  curve.thresholds.push_back(std::numeric_limits<double>::infinity());
  curve.fpr.push_back(0.0);
  curve.tpr.push_back(0.0);
  std::size_t tp = 0;
  std::size_t fp = 0;
  for (std::size_t i = 0; i < order.size();) {
    const double threshold = scores[order[i]];
    while (i < order.size() && scores[order[i]] == threshold) {
      if (labels[order[i]] == 1) {
        ++tp;
      } else {
        ++fp;
      }
      ++i;
    }
    curve.thresholds.push_back(threshold);
    curve.fpr.push_back(static_cast<double>(fp) / static_cast<double>(negatives));
    curve.tpr.push_back(static_cast<double>(tp) / static_cast<double>(positives));
  }
  return curve;
}

double auc(const RocCurve& curve) {
  double area = 0.0;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    area += (curve.fpr[i] - curve.fpr[i - 1]) * (curve.tpr[i] + curve.tpr[i - 1]) / 2.0;
  }
  return area;
}

double auc_oracle(std::span<const double> scores, std::span<const int> labels) {
  std::size_t positives = 0;
  std::size_t negatives = 0;
  check_binary(scores, labels, positives, negatives);
  // Twice the number of correctly ordered pairs, so ties stay integral.
  unsigned long long doubled = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] != 1) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (labels[j] != 0) continue;
      if (scores[i] > scores[j]) {
        doubled += 2;
      } else if (scores[i] == scores[j]) {
        doubled += 1;
      }
    }
  }
  return static_cast<double>(doubled) /
         (2.0 * static_cast<double>(positives) * static_cast<double>(negatives));
}

double accuracy(std::span<const int> predictions, std::span<const int> labels) {
  if (predictions.empty()) throw std::invalid_argument("accuracy of an empty set");
  if (predictions.size() != labels.size()) {
    throw std::invalid_argument("predictions and labels differ in length");
  }
  std::size_t hits = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) hits += predictions[i] == labels[i];
  return static_cast<double>(hits) / static_cast<double>(labels.size());
}

void write_roc_csv(std::ostream& out, const RocCurve& curve) {
  out << "threshold,fpr,tpr\n";
  for (std::size_t i = 0; i < curve.size(); ++i) {
    out << csv::format_double(curve.thresholds[i]) << ',' << csv::format_double(curve.fpr[i])
        << ',' << csv::format_double(curve.tpr[i]) << '\n';
  }
}

}  // namespace eqnn
