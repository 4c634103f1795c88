#pragma once

#include <complex>
#include <random>

#include <Eigen/Dense>

#include "mlk/gram_matrix.hpp"
#include "mlk/siegel.hpp"

namespace mlk {

// Random inputs for the property suites.  All draws come from the given
// engine, so a fixed seed gives a fixed sequence.

// Q·diag(e^{u_i})·Qᵀ with Q Haar-orthogonal and u_i uniform on
// [0, ln(max_condition)]; the condition number is at most max_condition.
Eigen::MatrixXd RandomSpd(int g, std::mt19937_64& rng, double max_condition = 1e3);

// g = 1: τ uniform in the truncated fundamental domain |x| ≤ ½, |τ| ≥ 1,
// Im τ ≤ 3.  g ≥ 2: Y = LLL-reduced RandomSpd scaled so that λ₁(Y)² lies in
// [√3/2, 3√3/2], X symmetric with entries uniform in [−½, ½].
PeriodMatrix RandomReducedPeriodMatrix(int g, std::mt19937_64& rng);

struct Sl2 {
  long a, b, c, d;
};

// A matrix of SL₂(ℤ) with every entry bounded by `bound` in absolute value.
Sl2 RandomSl2(long bound, std::mt19937_64& rng);

}  // namespace mlk
