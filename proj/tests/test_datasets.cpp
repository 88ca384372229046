#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <sstream>

#include "eqnn/datasets.hpp"

using namespace eqnn;

TEST(Labels, Symmetric) {
  EXPECT_EQ(label_symmetric({-1.0, 1.0}), 1);
  EXPECT_EQ(label_symmetric({0.0, 0.0}), 0);
  EXPECT_EQ(label_symmetric({1.0, -1.0}), 1);
}

TEST(Labels, AntiSymmetric) {
  EXPECT_EQ(label_antisymmetric({-0.5, -0.5}), 1);
  EXPECT_EQ(label_antisymmetric({0.5, 0.5}), 0);
  EXPECT_EQ(label_antisymmetric({-0.7, 0.3}), 0);
  EXPECT_EQ(raw_antisymmetric({-0.7, 0.3}), 0.0);
}

TEST(Labels, FullyAntiSymmetric) {
  EXPECT_EQ(label_fully_antisymmetric({0.6, 0.2}), 1);
  EXPECT_EQ(label_fully_antisymmetric({0.2, 0.6}), 0);
  // (-0.6, -0.2) is the image of (0.6, 0.2) under the point reflection,
  // which keeps the label; the generating function gives raw +1 there.
  EXPECT_EQ(raw_fully_antisymmetric({-0.6, -0.2}), 1.0);
  EXPECT_EQ(label_fully_antisymmetric({-0.6, -0.2}), 1);
}

TEST(Labels, DispatchAndParse) {
  EXPECT_EQ(label(DatasetKind::Symmetric, {-1.0, 1.0}), 1);
  EXPECT_EQ(parse_dataset_kind("full"), DatasetKind::FullyAntiSymmetric);
  EXPECT_EQ(parse_dataset_kind("AntiSymmetric"), DatasetKind::AntiSymmetric);
  EXPECT_THROW(parse_dataset_kind("circle"), std::invalid_argument);
}

TEST(Sample, Deterministic) {
  const auto a = sample(DatasetKind::Symmetric, 200, 7);
  const auto b = sample(DatasetKind::Symmetric, 200, 7);
  std::ostringstream sa, sb;
  write_dataset_csv(sa, a);
  write_dataset_csv(sb, b);
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_NE(sa.str(), [] {
    std::ostringstream s;
    write_dataset_csv(s, sample(DatasetKind::Symmetric, 200, 8));
    return s.str();
  }());
}

TEST(Sample, PointsInSquareAndLabelsMatchOracle) {
  for (DatasetKind k : {DatasetKind::Symmetric, DatasetKind::AntiSymmetric,
                        DatasetKind::FullyAntiSymmetric}) {
    const auto d = sample(k, 500, 3);
    ASSERT_EQ(d.points.size(), d.labels.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
      EXPECT_LE(std::abs(d.points[i].x1), 1.0);
      EXPECT_LE(std::abs(d.points[i].x2), 1.0);
      EXPECT_EQ(d.labels[i], label(k, d.points[i]));
    }
  }
}

TEST(Sample, ZeroSizeThrows) {
  EXPECT_THROW(sample(DatasetKind::Symmetric, 0, 1), std::invalid_argument);
}

TEST(Sample, AntiSymmetricBalance) {
  const auto d = sample(DatasetKind::AntiSymmetric, 100000, 5);
  EXPECT_NEAR(static_cast<double>(d.count_positive()) / d.size(), 0.5, 0.01);
}

TEST(Sample, SymmetricFractionMatchesIntegration) {
  // Class 1 is the union of two disks of radius 1.1 centred on opposite
  // corners; integrate the disk indicator by the midpoint rule.
  const int m = 2000;
  const double h = 2.0 / m;
  long inside = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double x = -1.0 + (i + 0.5) * h, y = -1.0 + (j + 0.5) * h;
      if (std::hypot(x + 1.0, y - 1.0) <= 1.1 || std::hypot(x - 1.0, y + 1.0) <= 1.1) ++inside;
    }
  }
  const double integrated = static_cast<double>(inside) / (double(m) * m);
  EXPECT_NEAR(integrated, 2.0 * (std::numbers::pi * 1.1 * 1.1 / 4.0) / 4.0, 1e-3);
  const auto d = sample(DatasetKind::Symmetric, 100000, 9);
  EXPECT_NEAR(static_cast<double>(d.count_positive()) / d.size(), integrated, 0.01);
}

TEST(GridSymmetry, ZeroViolations) {
  for (int res : {101, 201}) {
    for (DatasetKind k : {DatasetKind::Symmetric, DatasetKind::AntiSymmetric,
                          DatasetKind::FullyAntiSymmetric}) {
      const SymmetryReport r = verify_dataset_symmetry(k, res);
      EXPECT_EQ(r.total_violations(), 0u) << to_string(k) << " " << res;
      EXPECT_GT(r.checked, 0u);
    }
  }
}

TEST(GridSymmetry, ExpectedActions) {
  EXPECT_EQ(expected_label_action(DatasetKind::AntiSymmetric, TransformKind::DiagSwap),
            LabelAction::Invariant);
  EXPECT_EQ(expected_label_action(DatasetKind::AntiSymmetric, TransformKind::AntiDiagNegSwap),
            LabelAction::Flip);
  EXPECT_EQ(expected_label_action(DatasetKind::FullyAntiSymmetric, TransformKind::Both),
            LabelAction::Invariant);
  EXPECT_EQ(expected_label_action(DatasetKind::FullyAntiSymmetric, TransformKind::DiagSwap),
            LabelAction::Flip);
}

TEST(DatasetCsv, RoundTripIsExact) {
  const auto d = sample(DatasetKind::FullyAntiSymmetric, 300, 4);
  std::stringstream s;
  write_dataset_csv(s, d);
  const auto back = read_dataset_csv(s, d.kind);
  ASSERT_EQ(back.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    EXPECT_EQ(back.points[i], d.points[i]);
    EXPECT_EQ(back.labels[i], d.labels[i]);
  }
}

TEST(DatasetCsv, Errors) {
  EXPECT_THROW(read_dataset_csv(std::filesystem::path("/nonexistent/data.csv"),
                                DatasetKind::Symmetric),
               std::runtime_error);
  std::istringstream bad("x1,x2,label\n0.1,zz,1\n");
  EXPECT_THROW(read_dataset_csv(bad, DatasetKind::Symmetric), std::runtime_error);
  std::istringstream bad_label("x1,x2,label\n0.1,0.2,3\n");
  EXPECT_THROW(read_dataset_csv(bad_label, DatasetKind::Symmetric), std::runtime_error);
}
