#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "mlk/gram_matrix.hpp"

namespace mlk {

enum class Scheme { kTensorGauss, kQmcShifted };

std::string_view SchemeName(Scheme scheme);
// Accepts "tensor-gauss" and "qmc-shifted"; throws std::invalid_argument.
Scheme ParseScheme(std::string_view name);

struct QuadratureBudget {
  Scheme scheme = Scheme::kTensorGauss;
  // Tensor-gauss: nodes per axis, as a composite rule of 8-node Gauss–Legendre
  // panels on an equispaced partition (n < 8 or n % 8 ≠ 0: one n-node panel).
  int nodes = 256;
  // Qmc-shifted: Sobol points per shift and number of random shifts mod 1.
  std::int64_t qmc_points = std::int64_t{1} << 16;
  int qmc_shifts = 8;
  std::uint64_t seed = 20130101;
};

struct QuadratureResult {
  double value = 0;
  double error_estimate = 0;
  std::int64_t n_points = 0;
  Scheme scheme = Scheme::kTensorGauss;
  // Samples where the integrand was clipped from below (log integrands only).
  std::int64_t clipped = 0;
};

// Must be safe to call concurrently.
using CubeIntegrand = std::function<double(std::span<const double>)>;

// ∫_{[0,1]^dim} f.  Tensor-gauss is available for dim ≤ 2; its error estimate
// is the difference with the rule using half as many panels.  Qmc-shifted
// reports 3× the sample standard deviation of the per-shift estimates.
// Throws std::domain_error if f returns a non-finite value.
QuadratureResult IntegrateCube(CubeIntegrand const& f, int dim, QuadratureBudget const& budget);

// Gauss–Legendre nodes and weights on [0, 1].
void GaussLegendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// ∫_F ψ_Y(x)² dx.
QuadratureResult IntegralPsiSquared(GramMatrix const& y, QuadratureBudget const& budget);

// ∫_F ln f_Y(t; x) dx.
QuadratureResult IntegralLogF(GramMatrix const& y, double t, QuadratureBudget const& budget);

// The budget with its scheme switched to qmc-shifted when dim > 2 (tensor-gauss
// is not available there).  An explicit qmc-shifted request is kept.
QuadratureBudget DefaultBudgetFor(int dim, QuadratureBudget budget = {});

}  // namespace mlk
