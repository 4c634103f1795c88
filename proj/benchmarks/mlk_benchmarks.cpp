#include <benchmark/benchmark.h>

#include <random>

#include "mlk/lattice.hpp"
#include "mlk/quadrature.hpp"
#include "mlk/sampling.hpp"
#include "mlk/siegel.hpp"
#include "mlk/theta.hpp"

namespace mlk {
namespace {

GramMatrix RandomForm(int g) {
  std::mt19937_64 rng(7 + g);
  return GramMatrix(RandomSpd(g, rng, 1e3));
}

void BM_ShortestVector(benchmark::State& state) {
  GramMatrix const y = RandomForm(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ShortestVector(y));
}
BENCHMARK(BM_ShortestVector)->DenseRange(1, 6);

void BM_ClosestVector(benchmark::State& state) {
  int const g = static_cast<int>(state.range(0));
  GramMatrix const y = RandomForm(g);
  Eigen::VectorXd const x = Eigen::VectorXd::Constant(g, 0.37);
  for (auto _ : state) benchmark::DoNotOptimize(ClosestVector(y, x));
}
BENCHMARK(BM_ClosestVector)->DenseRange(1, 6);

void BM_GaussianLatticeSum(benchmark::State& state) {
  int const g = static_cast<int>(state.range(0));
  GaussianLatticeSum const f(RandomForm(g), 2.0);
  Eigen::VectorXd const x = Eigen::VectorXd::Constant(g, 0.37);
  for (auto _ : state) benchmark::DoNotOptimize(f(x));
}
BENCHMARK(BM_GaussianLatticeSum)->DenseRange(1, 4);

void BM_SiegelTheta(benchmark::State& state) {
  int const g = static_cast<int>(state.range(0));
  std::mt19937_64 rng(11);
  SiegelThetaFunction const theta(RandomReducedPeriodMatrix(g, rng));
  Eigen::VectorXcd const z = Eigen::VectorXcd::Constant(g, {0.1, 0.2});
  for (auto _ : state) benchmark::DoNotOptimize(theta.Theta(z));
}
BENCHMARK(BM_SiegelTheta)->DenseRange(1, 3);

void BM_IntegralLogF(benchmark::State& state) {
  GramMatrix const y(Eigen::MatrixXd::Identity(2, 2));
  QuadratureBudget budget;
  budget.nodes = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(IntegralLogF(y, 2.0, budget));
}
BENCHMARK(BM_IntegralLogF)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace mlk

BENCHMARK_MAIN();
