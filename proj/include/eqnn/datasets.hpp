// The three toy datasets on [-1, 1]^2 with Z2 x Z2 structure.
//
// Each oracle evaluates its closed-form generating function (Heaviside H with
// H(0) = 1) and thresholds it: label 1 when the raw value is > 0, else 0. The
// anti-symmetric function is 0 on two triangles where no term fires; the
// threshold puts those in class 0, which is what makes the label table below
// hold exactly.
//
//                      DiagSwap    AntiDiagNegSwap   Both
//   Symmetric          invariant   invariant         invariant
//   AntiSymmetric      invariant   flip              flip
//   FullyAntiSymmetric flip        flip              invariant
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "eqnn/point.hpp"
#include "eqnn/symmetry.hpp"

namespace eqnn {

enum class DatasetKind { Symmetric, AntiSymmetric, FullyAntiSymmetric };

const char* to_string(DatasetKind kind);
/// Accepts the enum spelling or the short forms sym / anti / full.
DatasetKind parse_dataset_kind(std::string_view text);

inline constexpr double kSymmetricRadius = 1.1;
inline constexpr double kFullyAntiSymmetricRadius = 1.0;

double raw_symmetric(Point2 p);
double raw_antisymmetric(Point2 p);
double raw_fully_antisymmetric(Point2 p);

int label_symmetric(Point2 p);
int label_antisymmetric(Point2 p);
int label_fully_antisymmetric(Point2 p);
int label(DatasetKind kind, Point2 p);

/// How the label of `kind` reacts to the point transform.
LabelAction expected_label_action(DatasetKind kind, TransformKind transform);

/// Distance from p to the nearest decision boundary of the dataset
/// (axes, diagonals and circles that the generating function switches on).
double boundary_distance(DatasetKind kind, Point2 p);

struct LabeledDataset {
  std::vector<Point2> points;
  std::vector<int> labels;
  DatasetKind kind = DatasetKind::Symmetric;
  std::uint64_t seed = 0;

  std::size_t size() const { return points.size(); }
  std::size_t count_positive() const;
};

/// n i.i.d. uniform points on the square, labeled by the kind's oracle.
/// Deterministic in (kind, n, seed). Throws std::invalid_argument for n = 0.
LabeledDataset sample(DatasetKind kind, std::size_t n, std::uint64_t seed);

struct SymmetryReport {
  DatasetKind kind = DatasetKind::Symmetric;
  std::size_t checked = 0;
  std::size_t excluded = 0;  // within 1e-9 of a decision boundary
  std::size_t diag_violations = 0;
  std::size_t antidiag_violations = 0;
  std::size_t both_violations = 0;
  std::size_t involution_violations = 0;

  std::size_t total_violations() const {
    return diag_violations + antidiag_violations + both_violations +
           involution_violations;
  }
};

/// Checks the label table on a resolution x resolution grid over the square.
SymmetryReport verify_dataset_symmetry(DatasetKind kind, int resolution);

/// CSV with header `x1,x2,label`, floats printed with 17 significant digits.
void write_dataset_csv(std::ostream& out, const LabeledDataset& data);
void write_dataset_csv(const std::filesystem::path& path, const LabeledDataset& data);

/// Throws std::runtime_error on a missing file or malformed row.
LabeledDataset read_dataset_csv(std::istream& in, DatasetKind kind);
LabeledDataset read_dataset_csv(const std::filesystem::path& path, DatasetKind kind);

}  // namespace eqnn
