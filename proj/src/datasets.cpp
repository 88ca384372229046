#include "eqnn/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>

#include "eqnn/csv.hpp"

namespace eqnn {
namespace {

double heaviside(double v) { return v >= 0.0 ? 1.0 : 0.0; }

// Distance from p to the corner circles centered at (-1, 1) and (1, -1).
double dist_upper_left(Point2 p) { return std::hypot(p.x1 + 1.0, p.x2 - 1.0); }
double dist_lower_right(Point2 p) { return std::hypot(p.x1 - 1.0, p.x2 + 1.0); }

}  // namespace

const char* to_string(DatasetKind kind) {
  switch (kind) {
    case DatasetKind::Symmetric: return "Symmetric";
    case DatasetKind::AntiSymmetric: return "AntiSymmetric";
    case DatasetKind::FullyAntiSymmetric: return "FullyAntiSymmetric";
  }
  return "?";
}

DatasetKind parse_dataset_kind(std::string_view text) {
  if (text == "Symmetric" || text == "symmetric" || text == "sym") {
    return DatasetKind::Symmetric;
  }
  if (text == "AntiSymmetric" || text == "antisymmetric" || text == "anti") {
    return DatasetKind::AntiSymmetric;
  }
  if (text == "FullyAntiSymmetric" || text == "fullyantisymmetric" || text == "full") {
    return DatasetKind::FullyAntiSymmetric;
  }
  throw std::invalid_argument("unknown dataset kind '" + std::string(text) + "'");
}

double raw_symmetric(Point2 p) {
  const double r = kSymmetricRadius;
  return 2.0 * heaviside(r - dist_upper_left(p)) +
         2.0 * heaviside(r - dist_lower_right(p)) - 1.0;
}

double raw_antisymmetric(Point2 p) {
  const double a = p.x1;
  const double b = p.x2;
  return heaviside(-a) * heaviside(-b) +
         heaviside(-a) * heaviside(b) * heaviside(a + b) -
         heaviside(a) * heaviside(b) +
         heaviside(a) * heaviside(-b) * heaviside(a + b);
}

double raw_fully_antisymmetric(Point2 p) {
  const double a = p.x1;
  const double b = p.x2;
  const double r = kFullyAntiSymmetricRadius;
  const double in_ul = heaviside(r - dist_upper_left(p));
  const double in_lr = heaviside(r - dist_lower_right(p));
  return heaviside(a) * heaviside(b) * (2.0 * heaviside(a - b) - 1.0) +
         heaviside(-a) * heaviside(-b) * (2.0 * heaviside(b - a) - 1.0) +
         heaviside(-a) * heaviside(b) * heaviside(a + b) * (2.0 * in_ul - 1.0) +
         heaviside(-a) * heaviside(b) * heaviside(-a - b) * (1.0 - 2.0 * in_ul) +
         heaviside(a) * heaviside(-b) * heaviside(a + b) * (1.0 - 2.0 * in_lr) +
         heaviside(a) * heaviside(-b) * heaviside(-a - b) * (2.0 * in_lr - 1.0);
}

int label_symmetric(Point2 p) { return raw_symmetric(p) > 0.0 ? 1 : 0; }
int label_antisymmetric(Point2 p) { return raw_antisymmetric(p) > 0.0 ? 1 : 0; }
int label_fully_antisymmetric(Point2 p) {
  return raw_fully_antisymmetric(p) > 0.0 ? 1 : 0;
}

int label(DatasetKind kind, Point2 p) {
  switch (kind) {
    case DatasetKind::Symmetric: return label_symmetric(p);
    case DatasetKind::AntiSymmetric: return label_antisymmetric(p);
    case DatasetKind::FullyAntiSymmetric: return label_fully_antisymmetric(p);
  }
  throw std::logic_error("unknown dataset kind");
}

LabelAction expected_label_action(DatasetKind kind, TransformKind transform) {
  const bool flips_diag = kind == DatasetKind::FullyAntiSymmetric;
  const bool flips_anti = kind != DatasetKind::Symmetric;
  bool flip = false;
  switch (transform) {
    case TransformKind::Identity: flip = false; break;
    case TransformKind::DiagSwap: flip = flips_diag; break;
    case TransformKind::AntiDiagNegSwap: flip = flips_anti; break;
    case TransformKind::Both: flip = flips_diag != flips_anti; break;
  }
  return flip ? LabelAction::Flip : LabelAction::Invariant;
}

double boundary_distance(DatasetKind kind, Point2 p) {
  const double diag = std::abs(p.x1 - p.x2) / std::numbers::sqrt2;
  const double anti = std::abs(p.x1 + p.x2) / std::numbers::sqrt2;
  const auto circles = [&](double r) {
    return std::min(std::abs(dist_upper_left(p) - r), std::abs(dist_lower_right(p) - r));
  };
  switch (kind) {
    case DatasetKind::Symmetric:
      return circles(kSymmetricRadius);
    case DatasetKind::AntiSymmetric:
      return std::min({std::abs(p.x1), std::abs(p.x2), anti});
    case DatasetKind::FullyAntiSymmetric:
      return std::min({std::abs(p.x1), std::abs(p.x2), diag, anti,
                       circles(kFullyAntiSymmetricRadius)});
  }
  return 0.0;
}

std::size_t LabeledDataset::count_positive() const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
}

LabeledDataset sample(DatasetKind kind, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("sample size must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  LabeledDataset data;
  data.kind = kind;
  data.seed = seed;
  data.points.reserve(n);
  data.labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x1 = coord(rng);
    const double x2 = coord(rng);
    data.points.push_back({x1, x2});
    data.labels.push_back(label(kind, data.points.back()));
  }
  return data;
}

SymmetryReport verify_dataset_symmetry(DatasetKind kind, int resolution) {
  if (resolution < 2) throw std::invalid_argument("grid resolution must be >= 2");
  constexpr double kBoundaryGap = 1e-9;
  constexpr TransformKind transforms[] = {TransformKind::DiagSwap,
                                          TransformKind::AntiDiagNegSwap,
                                          TransformKind::Both};
  SymmetryReport report;
  report.kind = kind;
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; j < resolution; ++j) {
      const Point2 p{-1.0 + 2.0 * i / (resolution - 1), -1.0 + 2.0 * j / (resolution - 1)};
      if (boundary_distance(kind, p) < kBoundaryGap) {
        ++report.excluded;
        continue;
      }
      ++report.checked;
      const int y = label(kind, p);
      for (TransformKind t : transforms) {
        const int mapped = label(kind, apply_transform(t, p));
        const bool flip = expected_label_action(kind, t) == LabelAction::Flip;
        const int expected = flip ? 1 - y : y;
        if (mapped != expected) {
          switch (t) {
            case TransformKind::DiagSwap: ++report.diag_violations; break;
            case TransformKind::AntiDiagNegSwap: ++report.antidiag_violations; break;
            default: ++report.both_violations; break;
          }
        }
        if (label(kind, apply_transform(t, apply_transform(t, p))) != y) {
          ++report.involution_violations;
        }
      }
    }
  }
  return report;
}

void write_dataset_csv(std::ostream& out, const LabeledDataset& data) {
  out << "x1,x2,label\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    out << csv::format_double(data.points[i].x1) << ','
        << csv::format_double(data.points[i].x2) << ',' << data.labels[i] << '\n';
  }
}

void write_dataset_csv(const std::filesystem::path& path, const LabeledDataset& data) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_dataset_csv(out, data);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

LabeledDataset read_dataset_csv(std::istream& in, DatasetKind kind) {
  const csv::Table table = csv::read(in);
  const auto c1 = table.column("x1");
  const auto c2 = table.column("x2");
  const auto cl = table.column("label");
  LabeledDataset data;
  data.kind = kind;
  for (const auto& row : table.rows) {
    const long long y = csv::parse_int(row[cl]);
    if (y != 0 && y != 1) throw std::runtime_error("label must be 0 or 1");
    data.points.push_back({csv::parse_double(row[c1]), csv::parse_double(row[c2])});
    data.labels.push_back(static_cast<int>(y));
  }
  if (data.size() == 0) throw std::runtime_error("dataset file has no rows");
  return data;
}

LabeledDataset read_dataset_csv(const std::filesystem::path& path, DatasetKind kind) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file " + path.string());
  return read_dataset_csv(in, kind);
}

}  // namespace eqnn
