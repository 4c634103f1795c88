#include "mlk/sampling.hpp"

#include <cmath>
#include <numeric>
#include <tuple>
#include <utility>
#include <stdexcept>

namespace mlk {

Eigen::MatrixXd RandomSpd(int g, std::mt19937_64& rng, double max_condition) {
  if (g < 1 || !(max_condition >= 1)) throw std::invalid_argument("RandomSpd: bad arguments");
  std::normal_distribution<double> normal;
  Eigen::MatrixXd a(g, g);
  for (int j = 0; j < g; ++j) {
    for (int i = 0; i < g; ++i) a(i, j) = normal(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  // Sign fix so that Q is Haar-distributed.
  for (int j = 0; j < g; ++j) {
    if (qr.matrixQR()(j, j) < 0) q.col(j) = -q.col(j);
  }
  std::uniform_real_distribution<double> log_eigen(0, std::log(max_condition));
  Eigen::VectorXd d(g);
  for (int i = 0; i < g; ++i) d[i] = std::exp(log_eigen(rng));
  Eigen::MatrixXd y = q * d.asDiagonal() * q.transpose();
  return 0.5 * (y + y.transpose());
}

PeriodMatrix RandomReducedPeriodMatrix(int g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0, 1);
  if (g == 1) {
    double const x = unit(rng) - 0.5;
    double const y_min = std::sqrt(1 - x * x);
    double const y = y_min + (3 - y_min) * unit(rng);
    return PeriodMatrixFromTau({x, y});
  }
  GramMatrix const raw(RandomSpd(g, rng));
  Eigen::MatrixXd y = raw.reduced_gram();
  y = 0.5 * (y + y.transpose());
  GramMatrix const reduced(y);
  double const target = std::sqrt(3.0) / 2 * (1 + 2 * unit(rng));
  double const scale = target / (reduced.first_minimum() * reduced.first_minimum());
  Eigen::MatrixXd x(g, g);
  for (int j = 0; j < g; ++j) {
    for (int i = 0; i <= j; ++i) x(i, j) = x(j, i) = unit(rng) - 0.5;
  }
  return PeriodMatrix(x, reduced.Scaled(scale));
}

Sl2 RandomSl2(long bound, std::mt19937_64& rng) {
  if (bound < 1) throw std::invalid_argument("RandomSl2: bound must be ≥ 1");
  std::uniform_int_distribution<long> entry(-bound, bound);
  for (;;) {
    long const a = entry(rng);
    long const c = entry(rng);
    if (std::gcd(a, c) != 1) continue;
    // Solve ad − bc = 1, then shift (b, d) by multiples of (a, c) into range.
    long x = 1, y = 0, x1 = 0, y1 = 1, r0 = a, r1 = c;
    while (r1 != 0) {
      long const q = r0 / r1;
      std::tie(r0, r1) = std::pair(r1, r0 - q * r1);
      std::tie(x, x1) = std::pair(x1, x - q * x1);
      std::tie(y, y1) = std::pair(y1, y - q * y1);
    }
    // a·x + c·y = r0 = ±1.
    long d = x * r0;
    long b = -y * r0;
    long const k = entry(rng);
    b += k * a;
    d += k * c;
    if (std::abs(b) <= bound && std::abs(d) <= bound) return {a, b, c, d};
  }
}

}  // namespace mlk
