#include "mlk/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mlk/lattice.hpp"
#include "mlk/parallel.hpp"
#include "mlk/theta.hpp"
#include "sobol_points.hpp"

namespace mlk {

namespace {

constexpr std::int64_t kBlockSize = 4096;
constexpr int kPanelOrder = 8;

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

Rule CompositeRule(int panels, int order) {
  std::vector<double> x, w;
  GaussLegendre(order, x, w);
  Rule rule;
  double const h = 1.0 / panels;
  for (int p = 0; p < panels; ++p) {
    for (int i = 0; i < order; ++i) {
      rule.nodes.push_back((p + x[i]) * h);
      rule.weights.push_back(w[i] * h);
    }
  }
  return rule;
}

// The n-node rule and the coarser rule its error is estimated against.
std::pair<Rule, Rule> TensorRules(int n) {
  if (n >= 2 * kPanelOrder && n % kPanelOrder == 0) {
    int const panels = n / kPanelOrder;
    return {CompositeRule(panels, kPanelOrder), CompositeRule(std::max(1, panels / 2), kPanelOrder)};
  }
  return {CompositeRule(1, n), CompositeRule(1, std::max(1, n / 2))};
}

double CheckedValue(double v) {
  if (!std::isfinite(v)) {
    throw std::domain_error("integrand is not finite at a sample point");
  }
  return v;
}

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void Add(double v) {
    double const t = sum_ + v;
    compensation_ += std::abs(sum_) >= std::abs(v) ? (sum_ - t) + v : (v - t) + sum_;
    sum_ = t;
  }
  double Total() const { return sum_ + compensation_; }

 private:
  double sum_ = 0;
  double compensation_ = 0;
};

// Σ_i f(point(i)) for i in [0, count), summed per block in a fixed order.
template <typename PointFn>
double BlockedSum(std::int64_t count, int dim, PointFn const& point) {
  std::int64_t const blocks = (count + kBlockSize - 1) / kBlockSize;
  std::vector<double> partial(blocks, 0.0);
  ParallelFor(blocks, [&](std::int64_t b) {
    std::vector<double> p(dim);
    CompensatedSum s;
    std::int64_t const end = std::min(count, (b + 1) * kBlockSize);
    for (std::int64_t i = b * kBlockSize; i < end; ++i) s.Add(point(i, p));
    partial[b] = s.Total();
  });
  CompensatedSum total;
  for (double s : partial) total.Add(s);
  return total.Total();
}

double TensorSum(Rule const& rule, int dim, CubeIntegrand const& f) {
  auto const n = static_cast<std::int64_t>(rule.nodes.size());
  std::int64_t const count = dim == 1 ? n : n * n;
  return BlockedSum(count, dim, [&](std::int64_t i, std::vector<double>& p) {
    if (dim == 1) {
      p[0] = rule.nodes[i];
      return rule.weights[i] * CheckedValue(f(p));
    }
    std::int64_t const a = i / n, b = i % n;
    p[0] = rule.nodes[a];
    p[1] = rule.nodes[b];
    return rule.weights[a] * rule.weights[b] * CheckedValue(f(p));
  });
}

}  // namespace

std::string_view SchemeName(Scheme scheme) {
  return scheme == Scheme::kTensorGauss ? "tensor-gauss" : "qmc-shifted";
}

Scheme ParseScheme(std::string_view name) {
  if (name == "tensor-gauss") return Scheme::kTensorGauss;
  if (name == "qmc-shifted") return Scheme::kQmcShifted;
  throw std::invalid_argument("unknown quadrature scheme '" + std::string(name) + "'");
}

void GaussLegendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("Gauss–Legendre order must be ≥ 1");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  // Legendre P_n(x) and P_n'(x) by the three-term recurrence.
  auto legendre = [n](double x, double& derivative) {
    double p0 = 1, p1 = 0;
    for (int j = 1; j <= n; ++j) {
      double const p2 = p1;
      p1 = p0;
      p0 = ((2.0 * j - 1) * x * p1 - (j - 1.0) * p2) / j;
    }
    derivative = n * (x * p0 - p1) / (x * x - 1);
    return p0;
  };
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double derivative = 0;
    for (int iteration = 0; iteration < 100; ++iteration) {
      double const dx = legendre(x, derivative) / derivative;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre(x, derivative);
    double const w = 2 / ((1 - x * x) * derivative * derivative);
    nodes[i] = 0.5 * (1 - x);
    nodes[n - 1 - i] = 0.5 * (1 + x);
    weights[i] = weights[n - 1 - i] = 0.5 * w;
  }
}

QuadratureResult IntegrateCube(CubeIntegrand const& f, int dim, QuadratureBudget const& budget) {
  if (dim < 1) throw std::invalid_argument("IntegrateCube: dimension must be ≥ 1");
  QuadratureResult result;
  result.scheme = budget.scheme;

  if (budget.scheme == Scheme::kTensorGauss) {
    if (dim > 2) {
      throw std::invalid_argument("tensor-gauss is only available in dimension ≤ 2");
    }
    if (budget.nodes < 1 || budget.nodes > 256) {
      throw std::invalid_argument("tensor-gauss nodes must be in [1, 256]");
    }
    auto const [fine, coarse] = TensorRules(budget.nodes);
    result.value = TensorSum(fine, dim, f);
    double const coarse_value = TensorSum(coarse, dim, f);
    result.error_estimate = std::abs(result.value - coarse_value);
    auto const n = static_cast<std::int64_t>(fine.nodes.size());
    result.n_points = dim == 1 ? n : n * n;
    return result;
  }

  if (budget.qmc_points < 1 || budget.qmc_shifts < 2) {
    throw std::invalid_argument("qmc-shifted needs ≥ 1 point and ≥ 2 shifts");
  }
  std::vector<double> const points = internal::SobolPoints(dim, budget.qmc_points);
  std::mt19937_64 rng(budget.seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<double> estimates;
  for (int s = 0; s < budget.qmc_shifts; ++s) {
    std::vector<double> shift(dim);
    for (double& v : shift) v = uniform(rng);
    double const sum = BlockedSum(budget.qmc_points, dim, [&](std::int64_t i, std::vector<double>& p) {
      for (int d = 0; d < dim; ++d) {
        double v = points[i * dim + d] + shift[d];
        p[d] = v >= 1 ? v - 1 : v;
      }
      return CheckedValue(f(p));
    });
    estimates.push_back(sum / static_cast<double>(budget.qmc_points));
  }
  double mean = 0;
  for (double e : estimates) mean += e;
  mean /= static_cast<double>(estimates.size());
  double var = 0;
  for (double e : estimates) var += (e - mean) * (e - mean);
  var /= static_cast<double>(estimates.size() - 1);
  result.value = mean;
  result.error_estimate = 3 * std::sqrt(var);
  result.n_points = budget.qmc_points * budget.qmc_shifts;
  return result;
}

QuadratureBudget DefaultBudgetFor(int dim, QuadratureBudget budget) {
  if (dim > 2) budget.scheme = Scheme::kQmcShifted;
  return budget;
}

QuadratureResult IntegralPsiSquared(GramMatrix const& y, QuadratureBudget const& budget) {
  int const g = y.dim();
  return IntegrateCube(
      [&y, g](std::span<const double> p) {
        Eigen::Map<const Eigen::VectorXd> x(p.data(), g);
        double const psi = ClosestVector(y, x).length;
        return psi * psi;
      },
      g, budget);
}

QuadratureResult IntegralLogF(GramMatrix const& y, double t, QuadratureBudget const& budget) {
  if (!(t > 0)) throw std::invalid_argument("∫ ln f_Y(t; ·) requires t > 0");
  int const g = y.dim();
  GaussianLatticeSum const f(y, t, kDefaultThetaTolerance);
  return IntegrateCube(
      [&f, g](std::span<const double> p) {
        Eigen::Map<const Eigen::VectorXd> x(p.data(), g);
        return std::log(f(x).value);
      },
      g, budget);
}

}  // namespace mlk
