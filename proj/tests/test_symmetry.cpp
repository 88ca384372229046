#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <random>

#include "eqnn/quantum_models.hpp"
#include "eqnn/symmetry.hpp"

using namespace eqnn;

namespace {

const TransformKind kAll[] = {TransformKind::Identity, TransformKind::DiagSwap,
                              TransformKind::AntiDiagNegSwap, TransformKind::Both};

std::vector<Point2> random_points(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Point2> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = u(rng);
    out.push_back({a, u(rng)});
  }
  return out;
}

Eigen::VectorXd spectrum(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  return es.eigenvalues();
}

}  // namespace

TEST(PointTransform, Actions) {
  const Point2 p{0.3, -0.8};
  EXPECT_EQ(apply_transform(TransformKind::DiagSwap, p), (Point2{-0.8, 0.3}));
  EXPECT_EQ(apply_transform(TransformKind::AntiDiagNegSwap, p), (Point2{0.8, -0.3}));
  EXPECT_EQ(apply_transform(TransformKind::Both, p), (Point2{-0.3, 0.8}));
  EXPECT_EQ(apply_transform(TransformKind::Identity, p), p);
}

TEST(PointTransform, InvolutionsAndComposition) {
  for (const Point2& p : random_points(100, 1)) {
    for (TransformKind t : kAll) {
      EXPECT_EQ(apply_transform(t, apply_transform(t, p)), p);
      for (TransformKind u : kAll) {
        EXPECT_EQ(apply_transform(u, apply_transform(t, p)), apply_transform(compose(t, u), p));
      }
    }
  }
  EXPECT_EQ(compose(TransformKind::DiagSwap, TransformKind::AntiDiagNegSwap), TransformKind::Both);
}

TEST(BuiltinReps, Examples) {
  const auto reps = builtin_reps();
  ASSERT_EQ(reps.size(), 3u);
  const CMatrix& a = rep_for(TransformKind::Both).matrix;
  EXPECT_EQ(a(3, 0), Complex(1.0, 0.0));  // |00> -> |11>
  const CMatrix& s = rep_for(TransformKind::DiagSwap).matrix;
  EXPECT_LT(max_abs_diff(s * s, CMatrix::Identity(4, 4)), 1e-15);
  const CMatrix& sa = rep_for(TransformKind::AntiDiagNegSwap).matrix;
  EXPECT_EQ(sa(1, 1), Complex(1.0, 0.0));  // |01> fixed
  EXPECT_LT(max_abs_diff(reflection_matrix(), kron(generator(GateKind::RX), generator(GateKind::RX))),
            1e-15);
}

TEST(BuiltinReps, UnitaryInvolutions) {
  for (const auto& rep : builtin_reps()) {
    const CMatrix& u = rep.matrix;
    EXPECT_LT(max_abs_diff(u * u.adjoint(), CMatrix::Identity(4, 4)), 1e-12) << rep.name;
    EXPECT_EQ(u * u, CMatrix(CMatrix::Identity(4, 4))) << rep.name;
  }
}

TEST(GateEquivariance, Examples) {
  EXPECT_LT(check_gate_equivariance(Gate::rx(0, 0.0), rep_for(TransformKind::Both)), 1e-12);
  EXPECT_LT(check_gate_equivariance(Gate::rzz(0, 1, 0.0), rep_for(TransformKind::DiagSwap)), 1e-12);
  const Gate rz_only_first[] = {Gate::rz(0, 0.0)};
  EXPECT_GT(check_gate_equivariance(rz_only_first, rep_for(TransformKind::Both)), 1e-3);
}

TEST(GateEquivariance, EveryEqnnBlockGateCommutesWithEveryRep) {
  for (const auto& rep : builtin_reps()) {
    EXPECT_LT(check_gate_equivariance(Gate::rx(0, 0.0), rep), 1e-12) << rep.name;
    EXPECT_LT(check_gate_equivariance(Gate::rzz(0, 1, 0.0), rep), 1e-12) << rep.name;
  }
}

TEST(GateEquivariance, DimensionMismatchThrows) {
  const Gate one_qubit_layer[] = {Gate::rx(0, 0.0), Gate::rx(2, 0.0)};
  EXPECT_THROW(check_gate_equivariance(one_qubit_layer, rep_for(TransformKind::Both)),
               std::invalid_argument);
}

TEST(ConjugateObservable, Examples) {
  for (const auto& rep : builtin_reps()) {
    EXPECT_LT(max_abs_diff(conjugate_observable(symmetric_observable(), rep).matrix(),
                           symmetric_observable().matrix()),
              1e-12);
  }
  EXPECT_LT(max_abs_diff(conjugate_observable(antisymmetric_o1(), rep_for(TransformKind::Both)).matrix(),
                         antisymmetric_o2().matrix()),
            1e-12);
  EXPECT_LT(max_abs_diff(
                conjugate_observable(fully_antisymmetric_o1(), rep_for(TransformKind::DiagSwap)).matrix(),
                fully_antisymmetric_o2().matrix()),
            1e-12);
}

TEST(ConjugateObservable, PreservesSpectrum) {
  const Observable obs[] = {symmetric_observable(), antisymmetric_o1(), antisymmetric_o2(),
                            fully_antisymmetric_o1(), fully_antisymmetric_o2()};
  for (const auto& o : obs) {
    for (const auto& rep : builtin_reps()) {
      const Eigen::VectorXd before = spectrum(o.matrix());
      const Eigen::VectorXd after = spectrum(conjugate_observable(o, rep).matrix());
      EXPECT_LT((before - after).cwiseAbs().maxCoeff(), 1e-10);
    }
  }
}

TEST(EmbeddingIntertwiner, Table) {
  const auto samples = random_points(200, 2);
  for (const auto& rep : builtin_reps()) {
    for (TransformKind t :
         {TransformKind::DiagSwap, TransformKind::AntiDiagNegSwap, TransformKind::Both}) {
      const double dev = check_embedding_intertwiner(rep, t, samples);
      if (t == rep.transform) {
        EXPECT_LT(dev, 1e-12) << rep.name << " " << to_string(t);
      } else {
        EXPECT_GT(dev, 1e-3) << rep.name << " " << to_string(t);
      }
    }
  }
  EXPECT_EQ(rep_for(TransformKind::DiagSwap).name, "S");
  EXPECT_EQ(rep_for(TransformKind::AntiDiagNegSwap).name, "SA");
  EXPECT_EQ(rep_for(TransformKind::Both).name, "A");
}
