#pragma once

#include <iosfwd>
#include <span>
#include <vector>

namespace eqnn {

/// Points of an ROC curve ordered by descending threshold. The first entry
/// has threshold +inf and sits at (0, 0); the last is (1, 1).
struct RocCurve {
  std::vector<double> thresholds;
  std::vector<double> fpr;
  std::vector<double> tpr;

  std::size_t size() const { return thresholds.size(); }
};

/// Threshold sweep over the unique scores; a point is classified positive
/// when score >= threshold, so tied scores move together. Throws
/// std::invalid_argument if only one class is present or lengths differ.
RocCurve roc(std::span<const double> scores, std::span<const int> labels);

/// Trapezoidal area under the curve.
double auc(const RocCurve& curve);

/// O(n^2) pairwise count: P(score_pos > score_neg) with ties counted 1/2.
double auc_oracle(std::span<const double> scores, std::span<const int> labels);

/// Fraction of matching entries. Throws std::invalid_argument on empty or
/// unequal inputs.
double accuracy(std::span<const int> predictions, std::span<const int> labels);

/// CSV `threshold,fpr,tpr`.
void write_roc_csv(std::ostream& out, const RocCurve& curve);

}  // namespace eqnn
