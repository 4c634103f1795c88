#pragma once

#include <complex>

#include <Eigen/Dense>

#include "mlk/gram_matrix.hpp"

namespace mlk {

// Relative asymmetry accepted (and then averaged away) in user matrices.
inline constexpr double kSymmetryTolerance = 1e-10;

struct ReductionFlags {
  bool re_normalized = false;  // all |X_ij| ≤ ½
  bool im_lll = false;         // Y is LLL-reduced (its reduced basis is the identity)
  bool lambda1_ok = false;     // λ₁(Y)² ≥ √3/2
};

// Ω = X + iY in the Siegel upper half space.
class PeriodMatrix {
 public:
  PeriodMatrix(Eigen::MatrixXd re, GramMatrix im);

  int dim() const { return im_.dim(); }
  Eigen::MatrixXd const& re() const { return re_; }
  GramMatrix const& im() const { return im_; }
  GramMatrix const& im_inverse() const { return im_inverse_; }
  ReductionFlags const& flags() const { return flags_; }
  Eigen::MatrixXcd omega() const;

  // re_normalized and lambda1_ok; for g = 1 additionally |τ| ≥ 1, i.e. τ lies
  // in the standard fundamental domain.
  bool IsReduced() const;

 private:
  Eigen::MatrixXd re_;
  GramMatrix im_;
  GramMatrix im_inverse_;
  ReductionFlags flags_;
};

// Checks shape and symmetry (relative tolerance kSymmetryTolerance, then
// symmetrizes) and positive definiteness of Y.  Throws std::invalid_argument.
PeriodMatrix ValidatePeriodMatrix(Eigen::MatrixXd const& re, Eigen::MatrixXd const& im);

PeriodMatrix PeriodMatrixFromTau(std::complex<double> tau);

// g = 1: exact reduction to |Re τ| ≤ ½, |τ| ≥ 1.  g ≥ 2: congruence by the
// LLL basis of Y followed by integral translation of X into [−½, ½].
PeriodMatrix Reduce(PeriodMatrix const& omega);

// H_L(γ, γ) for γ = m + Ωn:  (m + Xn)ᵀY⁻¹(m + Xn) + nᵀYn.
double RiemannFormNorm(PeriodMatrix const& omega, IntVector const& m, IntVector const& n);

// The real 2g×2g Gram matrix of H_L on ℤ^{2g} ≅ ℤ^g + Ωℤ^g.
GramMatrix RiemannFormGram(PeriodMatrix const& omega);

// ρ(A; L) = min over nonzero periods of √H_L(γ, γ).
double InjectivityDiameter(PeriodMatrix const& omega);

// √(π/(3g)).
double ClampRadius(int g);

struct ClampedMinimum {
  double lambda = 0;       // min(λ₁(Y⁻¹), √(π/(3g)))
  double rho = 0;          // injectivity diameter
  double rho_clamped = 0;  // min(ρ, √(π/(3g)))
  bool lambda_equals_rho = false;
};

ClampedMinimum LambdaClamped(PeriodMatrix const& omega);

}  // namespace mlk
