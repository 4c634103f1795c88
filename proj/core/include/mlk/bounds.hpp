#pragma once

#include <string>
#include <vector>

#include "mlk/quadrature.hpp"
#include "mlk/siegel.hpp"

namespace mlk {

inline constexpr double kDefaultEpsilon = 0.5;

// Slack every proof-chain entry is allowed beyond its numeric error.
inline constexpr double kChainTolerance = 1e-6;

// A principally polarized abelian variety over a number field K of degree d,
// given by one period matrix per complex embedding σ: K → ℂ.
class EmbeddingSet {
 public:
  // Throws std::invalid_argument unless 1 ≤ periods.size() ≤ degree and all
  // periods have the same dimension.
  EmbeddingSet(int degree, std::vector<PeriodMatrix> periods);

  int dim() const { return periods_.front().dim(); }
  int degree() const { return degree_; }
  std::vector<PeriodMatrix> const& periods() const { return periods_; }
  bool complete() const { return static_cast<int>(periods_.size()) == degree_; }

 private:
  int degree_;
  std::vector<PeriodMatrix> periods_;
};

struct EmbeddingTerm {
  double rho = 0;
  double rho_clamped = 0;
  double term = 0;
};

struct BoundReport {
  std::vector<EmbeddingTerm> per_embedding;
  double matrix_lemma_total = 0;
  double simplified_total = 0;
  double epsilon = kDefaultEpsilon;
  double kappa = 0;
  int clamped_count = 0;
};

// κ = √(3/(2π³e)).
double Kappa();

// π/(6ρ_c²) + g·ln(κρ_c√g) with ρ_c = min(ρ, √(π/(3g))).
double MatrixLemmaTerm(double rho, int g);

// Lower bound on h_Fa(A): the average of MatrixLemmaTerm over embeddings, with ρ
// the injectivity diameter of each period matrix.  Also fills in the
// simplified bound for `epsilon`.  Throws std::invalid_argument
// ("incomplete embedding data") when fewer periods than the degree are given.
BoundReport MatrixLemmaBound(EmbeddingSet const& e, double epsilon = kDefaultEpsilon);

// −(g/2)ln(2π²/ε) + ((1−ε)π/(6d)) Σ 1/ρ_σ² with unclamped ρ_σ.
double SimplifiedBound(EmbeddingSet const& e, double epsilon = kDefaultEpsilon);
double SimplifiedBound(std::vector<double> const& rhos, int g, int degree, double epsilon);

// Upper bound on ∫_F ln f_Y(2; x) dx in terms of λ ≤ √(π/(3g)):
//   −π/(6λ²) − g ln λ − (g/2) ln(6g/(πe)).
double LogFIntegralBound(double lambda, int g);

// Lower bound on 2I(A; L) in terms of λ:  π/(6λ²) + g ln λ + (g/2) ln(3g/(πe)).
double ArchimedeanLowerBound(double lambda, int g);

struct InvariantEstimate {
  QuadratureResult log_norm;  // ∫ ln‖s‖ dν₁
  QuadratureResult norm_sq;   // ∫ ‖s‖² dν₁
  double value = 0;           // −∫ln‖s‖ + ½ ln∫‖s‖²
  double error = 0;
};

// Below this, ln‖s‖ is clipped (and counted) when integrating.
inline constexpr double kLogClip = -40;

// I(A; L) for the torus ℂ^g/(ℤ^g + Ωℤ^g), integrating over z = x + Ωy,
// (x, y) ∈ [0,1]^{2g}.  Requires Ω.IsReduced(); throws std::invalid_argument
// otherwise.
InvariantEstimate ArchimedeanInvariant(PeriodMatrix const& omega, QuadratureBudget const& budget);

// −(g/2) ln(2π²) + (2/d) Σ I_σ.
double BostBound(std::vector<double> const& invariants, int g, int degree);

struct ChainEntry {
  std::string name;
  double lhs = 0;
  double rhs = 0;
  double slack = 0;      // ≥ 0 when the inequality holds
  double tolerance = 0;  // kChainTolerance + numeric error
  bool pass = false;
};

struct EmbeddingChain {
  int index = 0;
  double lambda = 0;
  double invariant = 0;
  double invariant_error = 0;
  double half_log_norm_sq = 0;  // ½ ln ∫‖s‖² dν₁, equal to −(g/4) ln 2
  std::vector<ChainEntry> entries;
};

struct ChainReport {
  std::vector<EmbeddingChain> embeddings;
  ChainEntry total;  // Bost bound over all embeddings vs the matrix-lemma bound
  bool pass = false;
};

struct ChainBudget {
  QuadratureBudget quadrature;  // scheme is chosen per integral dimension
  int parseval_samples = 4;
};

// Evaluates both sides of every inequality leading from the theta function to
// the matrix-lemma bound.  Per embedding:
//   parseval         ∫_F ‖s‖²(x + Ωy) dx = f_Y(2; y), worst of the sampled y
//   log_f_integral   ∫_F ln f_Y(2; ·) ≤ LogFIntegralBound(λ, g)
//   invariant_bound  2I ≥ ArchimedeanLowerBound(λ, g)
// and once for the whole set:
//   bost_vs_matrix_lemma  BostBound(I_σ) ≥ MatrixLemmaBound total.
// Requires complete data and reduced period matrices.
ChainReport VerifyChain(EmbeddingSet const& e, ChainBudget const& budget = {});

ChainEntry MakeEntry(std::string name, double lhs, double rhs, double slack, double error);

}  // namespace mlk
