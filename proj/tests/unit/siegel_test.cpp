#include "mlk/siegel.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"
#include "mlk/lattice.hpp"
#include "mlk/oracle.hpp"
#include "mlk/sampling.hpp"
#include "test_support.hpp"

namespace mlk {
namespace {

using testing::Matrix;

IntVector Ints(std::initializer_list<std::int64_t> values) {
  IntVector v(values.size());
  int i = 0;
  for (auto x : values) v[i++] = x;
  return v;
}

// min √H over 0 < ‖(m, n)‖∞ ≤ bound, g = 1.
double BruteForceRho(std::complex<double> tau, int bound) {
  PeriodMatrix const omega = PeriodMatrixFromTau(tau);
  double best = INFINITY;
  for (int m = -bound; m <= bound; ++m) {
    for (int n = -bound; n <= bound; ++n) {
      if (m == 0 && n == 0) continue;
      best = std::min(best, RiemannFormNorm(omega, Ints({m}), Ints({n})));
    }
  }
  return std::sqrt(best);
}

TEST(PeriodMatrixTest, ValidationExamples) {
  PeriodMatrix const id = ValidatePeriodMatrix(Eigen::MatrixXd::Zero(2, 2),
                                               Eigen::MatrixXd::Identity(2, 2));
  EXPECT_TRUE(id.flags().re_normalized);
  EXPECT_TRUE(id.flags().im_lll);
  EXPECT_TRUE(id.flags().lambda1_ok);

  EXPECT_FALSE(PeriodMatrixFromTau({0.7, 2}).flags().re_normalized);

  PeriodMatrix const thin = ValidatePeriodMatrix(Eigen::MatrixXd::Zero(2, 2),
                                                 Matrix({{0.5, 0}, {0, 3}}));
  EXPECT_FALSE(thin.flags().lambda1_ok);
}

TEST(PeriodMatrixTest, ValidationErrors) {
  EXPECT_THROW(ValidatePeriodMatrix(Matrix({{0, 0.1}, {0, 0}}), Eigen::MatrixXd::Identity(2, 2)),
               std::invalid_argument);
  EXPECT_THROW(ValidatePeriodMatrix(Eigen::MatrixXd::Zero(2, 2), Matrix({{1, 2}, {2, 1}})),
               std::invalid_argument);
  EXPECT_THROW(ValidatePeriodMatrix(Eigen::MatrixXd::Zero(1, 1), Eigen::MatrixXd::Identity(2, 2)),
               std::invalid_argument);
  EXPECT_THROW(PeriodMatrixFromTau({0, -1}), std::invalid_argument);
  // Asymmetry below the tolerance is averaged away.
  PeriodMatrix const nearly = ValidatePeriodMatrix(
      Eigen::MatrixXd::Zero(2, 2), Matrix({{1, 0.2}, {0.2 + 1e-14, 1}}));
  EXPECT_EQ(nearly.im().entries()(0, 1), nearly.im().entries()(1, 0));
}

TEST(ReduceTest, Examples) {
  PeriodMatrix const shifted = Reduce(PeriodMatrixFromTau({5.3, 2}));
  EXPECT_NEAR(shifted.re()(0, 0), 0.3, 1e-12);
  EXPECT_DOUBLE_EQ(shifted.im().entries()(0, 0), 2);

  PeriodMatrix const inside = Reduce(PeriodMatrixFromTau({0.3, 0.4}));
  double const x = inside.re()(0, 0);
  double const y = inside.im().entries()(0, 0);
  EXPECT_LE(std::abs(x), 0.5);
  EXPECT_GE(x * x + y * y, 1 - 1e-12);
  EXPECT_TRUE(inside.IsReduced());
  double const before = std::log(DeltaModular(EllipticTau({0.3, 0.4}))) + 6 * std::log(0.4);
  double const after = std::log(DeltaModular(EllipticTau({x, y}))) + 6 * std::log(y);
  EXPECT_NEAR(before, after, 1e-10 * std::abs(before));

  PeriodMatrix const diagonal = Reduce(ValidatePeriodMatrix(Eigen::MatrixXd::Zero(2, 2),
                                                            Matrix({{3, 0}, {0, 5}})));
  EXPECT_EQ(diagonal.im().entries(), Matrix({{3, 0}, {0, 5}}));
  EXPECT_EQ(diagonal.re(), Eigen::MatrixXd::Zero(2, 2));
}

TEST(ReduceTest, OneDimensionalIdempotent) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> re(-10, 10), im(0.05, 3);
  for (int trial = 0; trial < 100; ++trial) {
    PeriodMatrix const once = Reduce(PeriodMatrixFromTau({re(rng), im(rng)}));
    PeriodMatrix const twice = Reduce(once);
    EXPECT_TRUE(once.IsReduced());
    EXPECT_NEAR(twice.re()(0, 0), once.re()(0, 0), 1e-12);
    EXPECT_NEAR(twice.im().entries()(0, 0), once.im().entries()(0, 0), 1e-12);
  }
}

TEST(RiemannFormTest, Examples) {
  PeriodMatrix const iy = PeriodMatrixFromTau({0, 3});
  EXPECT_NEAR(RiemannFormNorm(iy, Ints({1}), Ints({0})), 1.0 / 3, 1e-15);
  EXPECT_DOUBLE_EQ(RiemannFormNorm(iy, Ints({0}), Ints({1})), 3);
  PeriodMatrix const tilted = PeriodMatrixFromTau({0.5, 2});
  EXPECT_NEAR(RiemannFormNorm(tilted, Ints({1}), Ints({-1})), 2.125, 1e-15);
  EXPECT_THROW(RiemannFormNorm(tilted, Ints({1, 0}), Ints({0})), std::invalid_argument);
}

TEST(RiemannFormTest, PositiveAndRestrictsToInverse) {
  std::mt19937_64 rng(32);
  for (int g = 1; g <= 3; ++g) {
    PeriodMatrix const omega = RandomReducedPeriodMatrix(g, rng);
    GramMatrix const gram = RiemannFormGram(omega);
    testing::ForEachInBox(2 * g, g == 3 ? 1 : 2, [&](Eigen::VectorXd const& v) {
      if (v.isZero()) return;
      IntVector const m = v.head(g).cast<std::int64_t>();
      IntVector const n = v.tail(g).cast<std::int64_t>();
      double const h = RiemannFormNorm(omega, m, n);
      EXPECT_GT(h, 0);
      EXPECT_NEAR(h, v.dot(gram.entries() * v), 1e-10 * h);
    });
    IntVector const m = IntVector::Ones(g);
    Eigen::VectorXd const md = m.cast<double>();
    EXPECT_NEAR(RiemannFormNorm(omega, m, IntVector::Zero(g)),
                md.dot(omega.im_inverse().entries() * md), 1e-12);
  }
}

TEST(InjectivityDiameterTest, Examples) {
  EXPECT_NEAR(InjectivityDiameter(PeriodMatrixFromTau({0, 2})), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(BruteForceRho({0, 2}, 5), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(InjectivityDiameter(PeriodMatrixFromTau({0, 1})), 1, 1e-15);
  PeriodMatrix const diagonal = ValidatePeriodMatrix(Eigen::MatrixXd::Zero(2, 2),
                                                     Eigen::MatrixXd::Identity(2, 2));
  EXPECT_NEAR(InjectivityDiameter(diagonal), 1, 1e-15);
}

TEST(InjectivityDiameterTest, MatchesBruteForce) {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> re(-2, 2), im(0.2, 4);
  for (int trial = 0; trial < 30; ++trial) {
    std::complex<double> const tau(re(rng), im(rng));
    EXPECT_NEAR(InjectivityDiameter(PeriodMatrixFromTau(tau)), BruteForceRho(tau, 12), 1e-12);
  }
}

TEST(InjectivityDiameterTest, InvariantUnderReduction) {
  std::mt19937_64 rng(34);
  for (int g = 1; g <= 3; ++g) {
    for (int trial = 0; trial < 10; ++trial) {
      Eigen::MatrixXd const y = RandomSpd(g, rng, 50);
      Eigen::MatrixXd x = Eigen::MatrixXd::Random(g, g) * 3;
      x = 0.5 * (x + x.transpose()).eval();
      PeriodMatrix const omega = ValidatePeriodMatrix(x, y);
      double const rho = InjectivityDiameter(omega);
      EXPECT_NEAR(InjectivityDiameter(Reduce(omega)), rho, 1e-9 * rho);
    }
  }
}

TEST(LambdaClampedTest, Examples) {
  ClampedMinimum const two_i = LambdaClamped(PeriodMatrixFromTau({0, 2}));
  EXPECT_NEAR(two_i.lambda, std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(two_i.rho_clamped, std::sqrt(0.5), 1e-15);
  EXPECT_TRUE(two_i.lambda_equals_rho);

  ClampedMinimum const reduced = LambdaClamped(Reduce(PeriodMatrixFromTau({0, 0.9})));
  EXPECT_TRUE(reduced.lambda_equals_rho);
  EXPECT_NEAR(reduced.lambda, reduced.rho_clamped, 1e-12);

  ClampedMinimum const diagonal = LambdaClamped(ValidatePeriodMatrix(
      Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Identity(2, 2)));
  EXPECT_NEAR(diagonal.lambda, std::sqrt(std::numbers::pi / 6), 1e-15);
  EXPECT_NEAR(diagonal.rho_clamped, 0.7236012546, 1e-10);
  EXPECT_NEAR(diagonal.rho, 1, 1e-15);
}

TEST(LambdaClampedTest, HoldsForReducedMatrices) {
  std::mt19937_64 rng(35);
  for (int g = 1; g <= 3; ++g) {
    for (int trial = 0; trial < 20; ++trial) {
      ClampedMinimum const c = LambdaClamped(RandomReducedPeriodMatrix(g, rng));
      EXPECT_LE(std::abs(c.lambda - c.rho_clamped), 1e-9);
      EXPECT_TRUE(c.lambda_equals_rho);
    }
  }
}

}  // namespace
}  // namespace mlk
