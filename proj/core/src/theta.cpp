#include "mlk/theta.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "mlk/enumeration.hpp"

namespace mlk {

namespace {

using std::numbers::pi;

// ½√(Σ‖b*_i‖²) for the reduced basis: no point is farther from the lattice
// than this, and in particular no nearest-plane distance is.
double CoveringBound(GramMatrix const& y) {
  return 0.5 * y.reduced_factor().diagonal().norm();
}

}  // namespace

GaussianTail::GaussianTail(int g, double lambda1, double a) : a_(a) {
  if (g < 1 || !(lambda1 > 0) || !(a > 0)) {
    throw std::invalid_argument("GaussianTail: invalid arguments");
  }
  for (int k = 0; k <= g; ++k) {
    double const log_binomial =
        std::lgamma(g + 1.0) - std::lgamma(k + 1.0) - std::lgamma(g - k + 1.0);
    log_coefficients_.push_back(log_binomial + k * std::log(2 / lambda1) - 0.5 * k * std::log(a));
  }
}

double GaussianTail::LogBound(double radius) const {
  if (!(radius >= 0)) throw std::invalid_argument("GaussianTail: negative radius");
  double const x = a_ * radius * radius;
  std::vector<double> logs;
  for (std::size_t k = 0; k < log_coefficients_.size(); ++k) {
    double const s = 0.5 * static_cast<double>(k) + 1;
    // Γ(s, x) ≤ x^{s−1}e^{−x}/(1 − (s−1)/x) for x > s − 1 (s ≥ 1), else ≤ Γ(s).
    double const log_gamma =
        x > s ? (s - 1) * std::log(x) - x - std::log1p(-(s - 1) / x) : std::lgamma(s);
    logs.push_back(log_coefficients_[k] + log_gamma);
  }
  double const top = *std::max_element(logs.begin(), logs.end());
  double sum = 0;
  for (double l : logs) sum += std::exp(l - top);
  return top + std::log(sum);
}

double GaussianTail::Bound(double radius) const { return std::exp(LogBound(radius)); }

double GaussianTail::Radius(double target) const {
  if (!(target > 0)) throw std::invalid_argument("GaussianTail: target must be positive");
  return RadiusForLogTarget(std::log(target));
}

double GaussianTail::RadiusForLogTarget(double log_target) const {
  if (std::isnan(log_target)) throw std::invalid_argument("GaussianTail: invalid target");
  double hi = 1 / std::sqrt(a_);
  while (LogBound(hi) > log_target) {
    hi *= 1.5;
    if (hi > 1e8) throw std::runtime_error("GaussianTail: no truncation radius found");
  }
  double lo = hi / 1.5;
  while (hi > lo * 1.001) {
    double const mid = 0.5 * (lo + hi);
    (LogBound(mid) > log_target ? lo : hi) = mid;
  }
  return hi;
}

double GaussianTailBound(int g, double lambda1, double a, double radius) {
  return GaussianTail(g, lambda1, a).Bound(radius);
}

GaussianLatticeSum::GaussianLatticeSum(GramMatrix const& y, double t, double tol)
    : y_(y), a_(pi * t) {
  if (!(t > 0) || !std::isfinite(t)) {
    throw std::invalid_argument("f_Y(t; x) requires t > 0");
  }
  if (!(tol > 0)) throw std::invalid_argument("f_Y(t; x) requires tol > 0");
  // Σ_m exp(−a‖x − m‖²) ≥ exp(−aψ(x)²) ≥ exp(−a·covering²).
  double const covering = CoveringBound(y);
  GaussianTail const tail(y.dim(), y.first_minimum(), a_);
  radius_ = tail.RadiusForLogTarget(std::log(tol) - a_ * covering * covering);
  log_tail_ = tail.LogBound(radius_);
}

double GaussianLatticeSum::RelativeSum(Eigen::VectorXd const& x, double& min_dist_sq,
                                       std::int64_t& terms) const {
  if (x.size() != y_.dim()) throw std::invalid_argument("f_Y(t; x): dimension mismatch");
  Eigen::VectorXd const fraction = x - x.array().floor().matrix();
  Eigen::VectorXd const center = y_.reduced_basis_inverse().cast<double>() * fraction;
  std::vector<double> dist;
  double const radius_sq = radius_ * radius_;
  EnumerateEllipsoid(y_.reduced_factor(), center, radius_sq,
                     [&](std::span<const std::int64_t>, double dist_sq) {
                       if (static_cast<std::int64_t>(dist.size()) >= kMaxThetaTerms) {
                         throw std::runtime_error(
                             "f_Y(t; x): tolerance unreachable within the term cap");
                       }
                       dist.push_back(dist_sq);
                       return radius_sq;
                     });
  // The ball always holds the nearest lattice point (radius ≥ covering bound).
  min_dist_sq = *std::min_element(dist.begin(), dist.end());
  double sum = 0;
  for (double d : dist) sum += std::exp(-a_ * (d - min_dist_sq));
  terms = static_cast<std::int64_t>(dist.size());
  return sum;
}

ThetaValue GaussianLatticeSum::operator()(Eigen::VectorXd const& x) const {
  ThetaValue result;
  double min_dist_sq = 0;
  double const sum = RelativeSum(x, min_dist_sq, result.terms_used);
  double const root_det = std::sqrt(y_.determinant());
  result.value = root_det * sum * std::exp(-a_ * min_dist_sq);
  result.tail_bound = root_det * std::exp(log_tail_);
  return result;
}

ThetaValue GaussianLatticeSum::PeakNormalized(Eigen::VectorXd const& x) const {
  ThetaValue result;
  double min_dist_sq = 0;
  double const sum = RelativeSum(x, min_dist_sq, result.terms_used);
  double const root_det = std::sqrt(y_.determinant());
  result.value = root_det * sum;
  result.tail_bound = root_det * std::exp(log_tail_ + a_ * min_dist_sq);
  return result;
}

ThetaValue FSeries(GramMatrix const& y, double t, Eigen::VectorXd const& x, double tol) {
  return GaussianLatticeSum(y, t, tol)(x);
}

SiegelThetaFunction::SiegelThetaFunction(PeriodMatrix const& omega, double tol)
    : omega_(omega),
      tol_(tol),
      tail_(omega.dim(), omega.im().first_minimum(), pi),
      fourth_root_det_(std::pow(omega.im().determinant(), 0.25)) {
  if (!(tol > 0)) throw std::invalid_argument("θ_Ω: tolerance must be positive");
  double const covering = CoveringBound(omega.im());
  base_radius_ = tail_.RadiusForLogTarget(std::log(tol) - pi * covering * covering);
}

std::complex<double> SiegelThetaFunction::Sum(Eigen::VectorXd const& re_z,
                                              Eigen::VectorXd const& center,
                                              double radius,
                                              std::int64_t& terms) const {
  GramMatrix const& y = omega_.im();
  int const g = y.dim();
  Eigen::MatrixXd const basis = y.reduced_basis().cast<double>();
  Eigen::MatrixXd const& x = omega_.re();
  std::complex<double> sum = 0;
  Eigen::VectorXd n(g);
  Eigen::VectorXd k_real(g);
  terms = 0;
  double const radius_sq = radius * radius;
  EnumerateEllipsoid(y.reduced_factor(), center, radius_sq,
                     [&](std::span<const std::int64_t> k, double dist_sq) {
                       if (++terms > kMaxThetaTerms) {
                         throw std::runtime_error("θ_Ω: term cap exceeded");
                       }
                       for (int i = 0; i < g; ++i) k_real[i] = static_cast<double>(k[i]);
                       n.noalias() = basis * k_real;
                       double const phase = std::fmod(n.dot(x * n) + 2 * n.dot(re_z), 2.0);
                       sum += std::polar(std::exp(-pi * dist_sq), pi * phase);
                       return radius_sq;
                     });
  return sum;
}

// With Im z = Yc the summands are e^{πcᵀYc}·e^{−π‖n + c‖²}·(phase).
SiegelThetaFunction::Normalized SiegelThetaFunction::Evaluate(Eigen::VectorXd re_z,
                                                              Eigen::VectorXd const& c) const {
  GramMatrix const& y = omega_.im();
  re_z -= re_z.array().floor().matrix();
  Normalized result;
  result.log_scale = pi * c.dot(y.entries() * c);
  Eigen::VectorXd const center = -(y.reduced_basis_inverse().cast<double>() * c);
  double const floor_term = tol_ * std::exp(-result.log_scale);

  double radius = base_radius_;
  for (int attempt = 0; attempt < 8; ++attempt) {
    result.tail_bound = tail_.Bound(radius);
    result.value = Sum(re_z, center, radius, result.terms);
    double const allowed = tol_ * (std::abs(result.value) + floor_term);
    if (result.tail_bound <= allowed) return result;
    // Cancellation near the theta divisor: widen until the relative bound holds.
    if (!(allowed > 0)) break;
    radius = std::max(radius, tail_.RadiusForLogTarget(std::log(0.5 * allowed)));
  }
  return result;
}

ComplexThetaValue SiegelThetaFunction::Theta(Eigen::VectorXcd const& z) const {
  if (z.size() != omega_.dim()) throw std::invalid_argument("θ_Ω(z): dimension mismatch");
  auto const lower = omega_.im().cholesky().triangularView<Eigen::Lower>();
  Eigen::VectorXd const c = lower.transpose().solve(lower.solve(Eigen::VectorXd(z.imag())));
  Normalized const n = Evaluate(z.real(), c);
  double const scale = std::exp(n.log_scale);
  return {scale * n.value, scale * n.tail_bound, n.terms};
}

double SiegelThetaFunction::CubeNorm(Eigen::VectorXcd const& z) const {
  if (z.size() != omega_.dim()) throw std::invalid_argument("‖s‖(z): dimension mismatch");
  auto const lower = omega_.im().cholesky().triangularView<Eigen::Lower>();
  Eigen::VectorXd const c = lower.transpose().solve(lower.solve(Eigen::VectorXd(z.imag())));
  return fourth_root_det_ * std::abs(Evaluate(z.real(), c).value);
}

double SiegelThetaFunction::CubeNormAt(Eigen::VectorXd const& x, Eigen::VectorXd const& y) const {
  if (x.size() != omega_.dim() || y.size() != omega_.dim()) {
    throw std::invalid_argument("‖s‖(x + Ωy): dimension mismatch");
  }
  return fourth_root_det_ * std::abs(Evaluate(x + omega_.re() * y, y).value);
}

ComplexThetaValue SiegelTheta(PeriodMatrix const& omega, Eigen::VectorXcd const& z, double tol) {
  return SiegelThetaFunction(omega, tol).Theta(z);
}

double CubeNormS(PeriodMatrix const& omega, Eigen::VectorXcd const& z, double tol) {
  return SiegelThetaFunction(omega, tol).CubeNorm(z);
}

}  // namespace mlk
