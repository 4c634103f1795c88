#include "mlk/lattice.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "mlk/sampling.hpp"
#include "test_support.hpp"

namespace mlk {
namespace {

using testing::BruteForceDistance;
using testing::BruteForceMinimum;
using testing::Matrix;
using testing::Vector;

TEST(GramMatrixTest, RejectsBadInput) {
  EXPECT_THROW(GramMatrix(Matrix({{1, 0.5}, {0.5000001, 1}})), std::invalid_argument);
  EXPECT_THROW(GramMatrix(Matrix({{1, 2}, {2, 1}})), std::invalid_argument);
  EXPECT_THROW(GramMatrix(Matrix({{1, 0}, {0, 1e-13}})), std::invalid_argument);
  EXPECT_THROW(GramMatrix(Eigen::MatrixXd(2, 3)), std::invalid_argument);
}

TEST(GramMatrixTest, CholeskyReproducesEntries) {
  std::mt19937_64 rng(1);
  for (int g = 1; g <= 6; ++g) {
    GramMatrix const y(RandomSpd(g, rng));
    Eigen::MatrixXd const l = y.cholesky();
    double const error = (l * l.transpose() - y.entries()).cwiseAbs().maxCoeff();
    EXPECT_LE(error, 1e-12 * y.entries().cwiseAbs().maxCoeff());
  }
}

TEST(GramMatrixTest, ReducedBasisIsUnimodular) {
  std::mt19937_64 rng(2);
  for (int g = 1; g <= 6; ++g) {
    GramMatrix const y(RandomSpd(g, rng));
    IntMatrix const product = y.reduced_basis() * y.reduced_basis_inverse();
    EXPECT_EQ(product, IntMatrix::Identity(g, g));
  }
}

TEST(LatticeTest, NormExamples) {
  EXPECT_DOUBLE_EQ(Norm(GramMatrix(Eigen::MatrixXd::Identity(2, 2)), Vector({3, 4})), 5);
  EXPECT_DOUBLE_EQ(Norm(GramMatrix(Matrix({{2, 0}, {0, 2}})), Vector({1, 0})), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(Norm(GramMatrix(Matrix({{2, 1}, {1, 2}})), Vector({1, -1})), std::sqrt(2.0));
  EXPECT_EQ(Norm(GramMatrix(Matrix({{2, 1}, {1, 2}})), Vector({0, 0})), 0);
  EXPECT_THROW(Norm(GramMatrix(Matrix({{2}})), Vector({1, 1})), std::invalid_argument);
}

TEST(LatticeTest, ShortestVectorExamples) {
  LatticeVector const id = ShortestVector(GramMatrix(Eigen::MatrixXd::Identity(3, 3)));
  EXPECT_DOUBLE_EQ(id.length, 1);
  EXPECT_EQ(id.m.cwiseAbs().sum(), 1);

  LatticeVector const hex = ShortestVector(GramMatrix(Matrix({{1, 0.5}, {0.5, 1}})));
  EXPECT_DOUBLE_EQ(hex.length, 1);

  LatticeVector const small = ShortestVector(GramMatrix(Matrix({{0.01}})));
  EXPECT_DOUBLE_EQ(small.length, 0.1);
  EXPECT_EQ(std::abs(small.m[0]), 1);
}

TEST(LatticeTest, ClosestVectorExamples) {
  LatticeVector const hole =
      ClosestVector(GramMatrix(Eigen::MatrixXd::Identity(2, 2)), Vector({0.5, 0.5}));
  EXPECT_DOUBLE_EQ(hole.length, std::sqrt(2.0) / 2);

  GramMatrix const y(Matrix({{2, 1}, {1, 2}}));
  LatticeVector const integral = ClosestVector(y, Vector({3, -7}));
  EXPECT_EQ(integral.length, 0);
  EXPECT_EQ(integral.m, (IntVector(2) << 3, -7).finished());

  LatticeVector const one_d = ClosestVector(GramMatrix(Matrix({{4}})), Vector({0.3}));
  EXPECT_NEAR(one_d.length, 0.6, 1e-15);
  EXPECT_EQ(one_d.m[0], 0);
}

TEST(LatticeTest, ShortestVectorMatchesBruteForce) {
  std::mt19937_64 rng(3);
  for (int g = 1; g <= 4; ++g) {
    int const bound = g <= 3 ? 10 : 6;
    for (int trial = 0; trial < 10; ++trial) {
      Eigen::MatrixXd const entries = RandomSpd(g, rng);
      double const expected = BruteForceMinimum(entries, bound);
      LatticeVector const svp = ShortestVector(GramMatrix(entries));
      EXPECT_NEAR(svp.length, expected, 1e-10 * expected) << "g = " << g;
      EXPECT_NEAR(Norm(GramMatrix(entries), svp.m.cast<double>()), svp.length, 1e-12 * expected);
    }
  }
}

TEST(LatticeTest, ClosestVectorMatchesBruteForce) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> coordinate(-3, 3);
  for (int g = 1; g <= 3; ++g) {
    for (int trial = 0; trial < 10; ++trial) {
      Eigen::MatrixXd const entries = RandomSpd(g, rng);
      Eigen::VectorXd x(g);
      for (int i = 0; i < g; ++i) x[i] = coordinate(rng);
      double const expected = BruteForceDistance(entries, x, 12);
      EXPECT_NEAR(ClosestVector(GramMatrix(entries), x).length, expected, 1e-10 * (1 + expected));
    }
  }
}

TEST(LatticeTest, DistanceIsPeriodic) {
  std::mt19937_64 rng(5);
  for (int g = 1; g <= 5; ++g) {
    GramMatrix const y(RandomSpd(g, rng));
    Eigen::VectorXd const x = Eigen::VectorXd::Random(g);
    Eigen::VectorXd shift(g);
    for (int i = 0; i < g; ++i) shift[i] = static_cast<double>(i * 7 - 11);
    double const a = ClosestVector(y, x).length;
    double const b = ClosestVector(y, x + shift).length;
    EXPECT_NEAR(a, b, 1e-12 * a);
  }
}

TEST(LatticeTest, ScalingCovariance) {
  std::mt19937_64 rng(6);
  for (int g = 1; g <= 4; ++g) {
    GramMatrix const y(RandomSpd(g, rng));
    GramMatrix const scaled = y.Scaled(7.3);
    Eigen::VectorXd const x = Eigen::VectorXd::Random(g);
    double const root = std::sqrt(7.3);
    EXPECT_NEAR(ShortestVector(scaled).length, root * ShortestVector(y).length,
                1e-12 * root * ShortestVector(y).length);
    EXPECT_NEAR(ClosestVector(scaled, x).length, root * ClosestVector(y, x).length,
                1e-12 * root * ClosestVector(y, x).length);
  }
}

TEST(LatticeTest, NearestPlaneIsAnUpperBound) {
  std::mt19937_64 rng(7);
  for (int g = 1; g <= 5; ++g) {
    GramMatrix const y(RandomSpd(g, rng));
    Eigen::VectorXd const x = Eigen::VectorXd::Random(g);
    EXPECT_GE(NearestPlaneDistance(y, x), ClosestVector(y, x).length * (1 - 1e-12));
  }
}

TEST(BezoutTest, Cofactors) {
  std::int64_t gcd = 0;
  IntVector const v = (IntVector(3) << 6, 10, 15).finished();
  IntVector const c = BezoutCofactors(v, gcd);
  EXPECT_EQ(gcd, 1);
  EXPECT_EQ(c.dot(v), 1);

  IntVector const w = (IntVector(2) << -4, 6).finished();
  EXPECT_EQ(BezoutCofactors(w, gcd).dot(w), 2);
  EXPECT_EQ(gcd, 2);
}

TEST(BezoutTest, DeepPointExamples) {
  GramMatrix const id(Eigen::MatrixXd::Identity(2, 2));
  DeepPoint const p = BezoutDeepPoint(id);
  EXPECT_DOUBLE_EQ(p.certified_lo, 0.5);
  EXPECT_DOUBLE_EQ(ClosestVector(id, p.x).length, 0.5);

  GramMatrix const one(Matrix({{1}}));
  DeepPoint const q = BezoutDeepPoint(one);
  EXPECT_DOUBLE_EQ(std::abs(q.x[0]), 0.5);
  EXPECT_DOUBLE_EQ(2 * ClosestVector(one, q.x).length * ShortestVector(one.Inverse()).length, 1);

  GramMatrix const hex(Matrix({{2, 1}, {1, 2}}));
  DeepPoint const r = BezoutDeepPoint(hex);
  EXPECT_NEAR(r.certified_lo, 0.5 * std::sqrt(1.5), 1e-15);
  EXPECT_GE(BruteForceDistance(hex.entries(), r.x, 3), 0.5 * std::sqrt(1.5) - 1e-12);
}

// 2·ψ_Y(m/2)·λ₁(Y⁻¹) ≥ 1.
TEST(BezoutTest, DeepPointIsDeep) {
  std::mt19937_64 rng(8);
  for (int g = 1; g <= 6; ++g) {
    for (int trial = 0; trial < 20; ++trial) {
      GramMatrix const y(RandomSpd(g, rng));
      DeepPoint const p = BezoutDeepPoint(y);
      EXPECT_EQ(p.gamma.dot(p.cofactors), 1);
      double const product =
          2 * ClosestVector(y, p.x).length * ShortestVector(y.Inverse()).length;
      EXPECT_GE(product, 1 - 1e-10) << "g = " << g;
    }
  }
}

TEST(MuIntervalTest, Examples) {
  IntervalEstimate const square = MuInterval(GramMatrix(Eigen::MatrixXd::Identity(2, 2)));
  EXPECT_NEAR(square.lo, std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(square.hi, std::sqrt(0.5), 1e-15);

  IntervalEstimate const line = MuInterval(GramMatrix(Matrix({{9}})));
  EXPECT_DOUBLE_EQ(line.lo, 1.5);
  EXPECT_DOUBLE_EQ(line.hi, 1.5);
}

// Dense grid at step 1e−3 over the unit square; μ for the hexagonal form is
// √(2/3), attained at (1/3, 1/3).
TEST(MuIntervalTest, ContainsDenseGridMaximum) {
  Eigen::MatrixXd const entries = Matrix({{2, 1}, {1, 2}});
  double grid_max = 0;
  Eigen::VectorXd x(2);
  for (int i = 0; i <= 1000; ++i) {
    for (int j = 0; j <= 1000; ++j) {
      x << i * 1e-3, j * 1e-3;
      grid_max = std::max(grid_max, BruteForceDistance(entries, x, 2));
    }
  }
  IntervalEstimate const mu = MuInterval(GramMatrix(entries));
  EXPECT_LE(mu.lo, grid_max + 1e-3);
  EXPECT_GE(mu.hi, grid_max);
  EXPECT_TRUE(mu.Contains(std::sqrt(2.0 / 3)));
}

TEST(MuIntervalTest, EnclosureAndBezoutBound) {
  std::mt19937_64 rng(9);
  for (int g = 1; g <= 5; ++g) {
    for (int trial = 0; trial < 5; ++trial) {
      GramMatrix const y(RandomSpd(g, rng));
      IntervalEstimate const mu = MuInterval(y, 256);
      EXPECT_LE(mu.lo, mu.hi);
      EXPECT_GE(2 * mu.lo * ShortestVector(y.Inverse()).length, 1 - 1e-10);
    }
  }
}

TEST(IntervalEstimateTest, Validates) {
  EXPECT_THROW(IntervalEstimate(2, 1), std::invalid_argument);
  EXPECT_THROW(IntervalEstimate(0, INFINITY), std::invalid_argument);
  EXPECT_TRUE(IntervalEstimate(1, 2).Contains(1.5));
}

}  // namespace
}  // namespace mlk
