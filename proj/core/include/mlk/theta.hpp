#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "mlk/gram_matrix.hpp"
#include "mlk/siegel.hpp"

namespace mlk {

inline constexpr double kDefaultThetaTolerance = 1e-12;
inline constexpr std::int64_t kMaxThetaTerms = 50'000'000;

// A truncated series together with a certified bound on what was dropped.
template <typename T>
struct SeriesValue {
  T value{};
  double tail_bound = 0;  // absolute
  std::int64_t terms_used = 0;
};

using ThetaValue = SeriesValue<double>;
using ComplexThetaValue = SeriesValue<std::complex<double>>;

// Tail of a Gaussian lattice sum: an upper bound on Σ exp(−a‖p − c‖²) over
// the points p of a g-dimensional lattice with first minimum λ₁ that lie
// outside the ball of radius R around an arbitrary c.  The number of lattice
// points within r of c is at most (1 + 2r/λ₁)^g (disjoint balls of radius
// λ₁/2); integrating this count by parts against the Gaussian gives
//   Σ_k C(g,k) (2/λ₁)^k a^{−k/2} Γ(k/2 + 1, aR²),
// with the incomplete gamma function bounded in closed form.
class GaussianTail {
 public:
  GaussianTail(int g, double lambda1, double a);

  double Bound(double radius) const;
  double LogBound(double radius) const;
  // A radius with Bound(radius) ≤ target, within a factor 1.001 of the least.
  double Radius(double target) const;
  // The same for ln(target), for targets below the double range.
  double RadiusForLogTarget(double log_target) const;

 private:
  double a_;
  std::vector<double> log_coefficients_;
};

double GaussianTailBound(int g, double lambda1, double a, double radius);

// f_Y(t; x) = √det(Y) Σ_m exp(−πt‖x − m‖²_Y), truncated so that the omitted
// mass is at most tol·value.  The truncation radius is fixed at construction
// from the covering bound of the reduced basis, so it is valid for every x.
class GaussianLatticeSum {
 public:
  // Throws std::invalid_argument for t ≤ 0 or tol ≤ 0.
  GaussianLatticeSum(GramMatrix const& y, double t, double tol = kDefaultThetaTolerance);

  // Throws std::invalid_argument on dimension mismatch, std::runtime_error
  // when more than kMaxThetaTerms terms would be needed.
  ThetaValue operator()(Eigen::VectorXd const& x) const;

  // f_Y(t; x)·exp(πtψ_Y(x)²), summed relative to the nearest lattice point so
  // it stays representable when f_Y(t; x) itself underflows.  The tail bound
  // is scaled the same way.
  ThetaValue PeakNormalized(Eigen::VectorXd const& x) const;

  double radius() const { return radius_; }

 private:
  // Σ exp(−a(d² − d²_min)) over the ellipsoid, and d²_min.
  double RelativeSum(Eigen::VectorXd const& x, double& min_dist_sq, std::int64_t& terms) const;

  GramMatrix y_;
  double a_;
  double radius_;
  double log_tail_;
};

ThetaValue FSeries(GramMatrix const& y, double t, Eigen::VectorXd const& x,
                   double tol = kDefaultThetaTolerance);

// θ_Ω(z) = Σ_n exp(iπ nᵀΩn + 2iπ nᵀz) and the cube-metric norm of the theta
// section.  Sums run over an ellipsoid centred at the Gaussian peak
// n = −Y⁻¹Im z, with |omitted| ≤ tol·(|value| + tol).
class SiegelThetaFunction {
 public:
  explicit SiegelThetaFunction(PeriodMatrix const& omega, double tol = kDefaultThetaTolerance);

  ComplexThetaValue Theta(Eigen::VectorXcd const& z) const;
  // ‖s‖(z) = det(Y)^{1/4} exp(−π yᵀY⁻¹y) |θ_Ω(z)|, y = Im z.
  double CubeNorm(Eigen::VectorXcd const& z) const;
  // ‖s‖(x + Ωy) for real x, y.
  double CubeNormAt(Eigen::VectorXd const& x, Eigen::VectorXd const& y) const;

 private:
  struct Normalized {
    std::complex<double> value;  // e^{−πcᵀYc} θ
    double tail_bound = 0;
    std::int64_t terms = 0;
    double log_scale = 0;  // πcᵀYc
  };
  Normalized Evaluate(Eigen::VectorXd re_z, Eigen::VectorXd const& c) const;
  std::complex<double> Sum(Eigen::VectorXd const& re_z, Eigen::VectorXd const& center,
                           double radius, std::int64_t& terms) const;

  PeriodMatrix omega_;
  double tol_;
  GaussianTail tail_;
  double base_radius_;
  double fourth_root_det_;
};

ComplexThetaValue SiegelTheta(PeriodMatrix const& omega, Eigen::VectorXcd const& z,
                              double tol = kDefaultThetaTolerance);
double CubeNormS(PeriodMatrix const& omega, Eigen::VectorXcd const& z,
                 double tol = kDefaultThetaTolerance);

}  // namespace mlk
