#include "mlk/bounds.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "mlk/theta.hpp"
#include "sobol_points.hpp"

namespace mlk {

namespace {

using std::numbers::e;
using std::numbers::pi;

void CheckLambda(double lambda, int g) {
  if (g < 1) throw std::invalid_argument("dimension must be ≥ 1");
  if (!(lambda > 0) || lambda > ClampRadius(g) * (1 + 1e-12)) {
    throw std::invalid_argument("λ must lie in (0, √(π/(3g))]");
  }
}

void CheckEpsilon(double epsilon) {
  if (!(epsilon > 0 && epsilon < 1)) {
    throw std::invalid_argument("ε must lie in (0, 1)");
  }
}

void RequireComplete(EmbeddingSet const& e) {
  if (!e.complete()) throw std::invalid_argument("incomplete embedding data");
}

std::vector<double> InjectivityDiameters(EmbeddingSet const& e) {
  std::vector<double> rhos;
  for (PeriodMatrix const& omega : e.periods()) rhos.push_back(InjectivityDiameter(omega));
  return rhos;
}

}  // namespace

EmbeddingSet::EmbeddingSet(int degree, std::vector<PeriodMatrix> periods)
    : degree_(degree), periods_(std::move(periods)) {
  if (degree_ < 1) throw std::invalid_argument("field degree must be ≥ 1");
  if (periods_.empty()) throw std::invalid_argument("no period matrices given");
  if (static_cast<int>(periods_.size()) > degree_) {
    throw std::invalid_argument("more period matrices than embeddings");
  }
  for (PeriodMatrix const& omega : periods_) {
    if (omega.dim() != periods_.front().dim()) {
      throw std::invalid_argument("period matrices have different dimensions");
    }
  }
}

double Kappa() { return std::sqrt(3 / (2 * pi * pi * pi * e)); }

double MatrixLemmaTerm(double rho, int g) {
  if (!(rho > 0) || !std::isfinite(rho)) throw std::invalid_argument("ρ must be positive");
  double const rc = std::min(rho, ClampRadius(g));
  return pi / (6 * rc * rc) + g * std::log(Kappa() * rc * std::sqrt(static_cast<double>(g)));
}

BoundReport MatrixLemmaBound(EmbeddingSet const& e, double epsilon) {
  RequireComplete(e);
  CheckEpsilon(epsilon);
  int const g = e.dim();
  double const clamp = ClampRadius(g);
  BoundReport report;
  report.epsilon = epsilon;
  report.kappa = Kappa();
  std::vector<double> const rhos = InjectivityDiameters(e);
  double sum = 0;
  for (double rho : rhos) {
    EmbeddingTerm t;
    t.rho = rho;
    t.rho_clamped = std::min(rho, clamp);
    t.term = MatrixLemmaTerm(rho, g);
    if (rho > clamp) ++report.clamped_count;
    sum += t.term;
    report.per_embedding.push_back(t);
  }
  report.matrix_lemma_total = sum / e.degree();
  report.simplified_total = SimplifiedBound(rhos, g, e.degree(), epsilon);
  return report;
}

double SimplifiedBound(std::vector<double> const& rhos, int g, int degree, double epsilon) {
  CheckEpsilon(epsilon);
  if (static_cast<int>(rhos.size()) != degree) {
    throw std::invalid_argument("incomplete embedding data");
  }
  double sum = 0;
  for (double rho : rhos) {
    if (!(rho > 0)) throw std::invalid_argument("ρ must be positive");
    sum += 1 / (rho * rho);
  }
  return -0.5 * g * std::log(2 * pi * pi / epsilon) + (1 - epsilon) * pi / (6.0 * degree) * sum;
}

double SimplifiedBound(EmbeddingSet const& e, double epsilon) {
  RequireComplete(e);
  return SimplifiedBound(InjectivityDiameters(e), e.dim(), e.degree(), epsilon);
}

double LogFIntegralBound(double lambda, int g) {
  CheckLambda(lambda, g);
  return -pi / (6 * lambda * lambda) - g * std::log(lambda) - 0.5 * g * std::log(6.0 * g / (pi * e));
}

double ArchimedeanLowerBound(double lambda, int g) {
  CheckLambda(lambda, g);
  return pi / (6 * lambda * lambda) + g * std::log(lambda) + 0.5 * g * std::log(3.0 * g / (pi * e));
}

InvariantEstimate ArchimedeanInvariant(PeriodMatrix const& omega, QuadratureBudget const& budget) {
  if (!omega.IsReduced()) {
    throw std::invalid_argument(
        "period matrix is not reduced (need |Re Ω| ≤ 1/2 and λ₁(Im Ω)² ≥ √3/2); reduce it first");
  }
  int const g = omega.dim();
  SiegelThetaFunction const theta(omega);
  QuadratureBudget const cube = DefaultBudgetFor(2 * g, budget);
  auto norm_at = [&theta, g](std::span<const double> p) {
    Eigen::Map<const Eigen::VectorXd> x(p.data(), g);
    Eigen::Map<const Eigen::VectorXd> y(p.data() + g, g);
    return theta.CubeNormAt(x, y);
  };

  InvariantEstimate result;
  result.norm_sq = IntegrateCube(
      [&](std::span<const double> p) {
        double const s = norm_at(p);
        return s * s;
      },
      2 * g, cube);

  std::atomic<std::int64_t> clipped{0};
  result.log_norm = IntegrateCube(
      [&](std::span<const double> p) {
        double const s = norm_at(p);
        double const l = s > 0 ? std::log(s) : -std::numeric_limits<double>::infinity();
        if (l < kLogClip) {
          clipped.fetch_add(1, std::memory_order_relaxed);
          return kLogClip;
        }
        return l;
      },
      2 * g, cube);
  result.log_norm.clipped = clipped.load();

  result.value = -result.log_norm.value + 0.5 * std::log(result.norm_sq.value);
  result.error = result.log_norm.error_estimate +
                 0.5 * result.norm_sq.error_estimate / result.norm_sq.value;
  return result;
}

double BostBound(std::vector<double> const& invariants, int g, int degree) {
  if (g < 1 || degree < 1) throw std::invalid_argument("invalid dimension or degree");
  if (static_cast<int>(invariants.size()) != degree) {
    throw std::invalid_argument("need one invariant per embedding");
  }
  double sum = 0;
  for (double v : invariants) sum += v;
  return -0.5 * g * std::log(2 * pi * pi) + 2.0 / degree * sum;
}

ChainEntry MakeEntry(std::string name, double lhs, double rhs, double slack, double error) {
  ChainEntry entry;
  entry.name = std::move(name);
  entry.lhs = lhs;
  entry.rhs = rhs;
  entry.slack = slack;
  entry.tolerance = kChainTolerance + error;
  entry.pass = std::isfinite(slack) && slack >= -entry.tolerance;
  return entry;
}

ChainReport VerifyChain(EmbeddingSet const& e, ChainBudget const& budget) {
  RequireComplete(e);
  for (std::size_t i = 0; i < e.periods().size(); ++i) {
    if (!e.periods()[i].IsReduced()) {
      throw std::invalid_argument("embedding " + std::to_string(i) +
                                  ": period matrix is not reduced; reduce it first");
    }
  }
  int const g = e.dim();
  BoundReport const bound = MatrixLemmaBound(e);
  QuadratureBudget const cube_g = DefaultBudgetFor(g, budget.quadrature);

  // Sample points for the Parseval identity: 0, the centre, then Sobol points.
  std::vector<Eigen::VectorXd> samples;
  samples.push_back(Eigen::VectorXd::Zero(g));
  samples.push_back(Eigen::VectorXd::Constant(g, 0.5));
  int const extra = std::max(0, budget.parseval_samples - 2);
  std::vector<double> const sobol = internal::SobolPoints(g, extra + 1);
  for (int s = 1; s <= extra; ++s) {
    samples.emplace_back(Eigen::Map<const Eigen::VectorXd>(sobol.data() + s * g, g));
  }
  samples.resize(std::max(1, budget.parseval_samples));

  ChainReport report;
  std::vector<double> invariants;
  double invariant_error = 0;
  for (std::size_t i = 0; i < e.periods().size(); ++i) {
    PeriodMatrix const& omega = e.periods()[i];
    GramMatrix const& y = omega.im();
    SiegelThetaFunction const theta(omega);
    EmbeddingChain chain;
    chain.index = static_cast<int>(i);
    chain.lambda = LambdaClamped(omega).lambda;

    ChainEntry parseval;
    for (std::size_t s = 0; s < samples.size(); ++s) {
      Eigen::VectorXd const& ys = samples[s];
      QuadratureResult const lhs = IntegrateCube(
          [&](std::span<const double> p) {
            double const v = theta.CubeNormAt(Eigen::Map<const Eigen::VectorXd>(p.data(), g), ys);
            return v * v;
          },
          g, cube_g);
      ThetaValue const rhs = FSeries(y, 2, ys);
      ChainEntry candidate = MakeEntry("parseval", lhs.value, rhs.value,
                                       -std::abs(lhs.value - rhs.value),
                                       lhs.error_estimate + rhs.tail_bound);
      if (s == 0 || candidate.slack + candidate.tolerance < parseval.slack + parseval.tolerance) {
        parseval = candidate;
      }
    }
    chain.entries.push_back(parseval);

    QuadratureResult const log_f = IntegralLogF(y, 2, cube_g);
    double const log_f_bound = LogFIntegralBound(chain.lambda, g);
    chain.entries.push_back(MakeEntry("log_f_integral", log_f.value, log_f_bound,
                                      log_f_bound - log_f.value, log_f.error_estimate));

    InvariantEstimate const inv = ArchimedeanInvariant(omega, budget.quadrature);
    chain.invariant = inv.value;
    chain.invariant_error = inv.error;
    chain.half_log_norm_sq = 0.5 * std::log(inv.norm_sq.value);
    double const inv_bound = ArchimedeanLowerBound(chain.lambda, g);
    chain.entries.push_back(MakeEntry("invariant_bound", 2 * inv.value, inv_bound,
                                      2 * inv.value - inv_bound, 2 * inv.error));
    invariants.push_back(inv.value);
    invariant_error += inv.error;
    report.embeddings.push_back(std::move(chain));
  }

  double const bost = BostBound(invariants, g, e.degree());
  report.total = MakeEntry("bost_vs_matrix_lemma", bost, bound.matrix_lemma_total, bost - bound.matrix_lemma_total,
                           2.0 / e.degree() * invariant_error);
  report.pass = report.total.pass;
  for (EmbeddingChain const& chain : report.embeddings) {
    for (ChainEntry const& entry : chain.entries) report.pass = report.pass && entry.pass;
  }
  return report;
}

}  // namespace mlk
