#include "mlk/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mlk {

namespace {
constexpr long kMaxProductTerms = 50'000'000;
}  // namespace

EllipticTau::EllipticTau(std::complex<double> tau) : tau_(tau) {
  if (!(tau.imag() > 0) || !std::isfinite(tau.real()) || !std::isfinite(tau.imag())) {
    throw std::invalid_argument("τ must lie in the upper half plane");
  }
}

double LogAbsDelta(EllipticTau tau, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("LogAbsDelta: tol must be positive");
  long double const x = tau.value().real();
  long double const y = tau.value().imag();
  long double const two_pi = 2 * std::numbers::pi_v<long double>;
  long double const abs_q = std::exp(-two_pi * y);
  // Σ_{n>N} |ln|1 − q^n|| ≤ Σ_{n>N} −ln(1 − |q|^n) ≤ |q|^{N+1}/((1 − |q|)(1 − |q|^{N+1})),
  // and 24 times that bounds the relative change of |Δ|.
  long double const one_minus_q = -std::expm1(-two_pi * y);
  long double sum = 0;
  long double q_n = 1;
  for (long n = 1;; ++n) {
    if (n > kMaxProductTerms) throw std::runtime_error("LogAbsDelta: Im τ too small");
    q_n *= abs_q;
    long double const r = q_n;
    long double const one_minus_r = -std::expm1(-two_pi * y * n);
    // |1 − re^{iθ}|² = (1 − r)² + 4r sin²(θ/2), θ = 2πnx.
    long double const half_angle =
        std::numbers::pi_v<long double> * std::fmod(static_cast<long double>(n) * x, 1.0L);
    long double const s = std::sin(half_angle);
    sum += 0.5L * std::log(one_minus_r * one_minus_r + 4 * r * s * s);
    long double const tail = 24 * r * abs_q / (one_minus_q * (1 - r * abs_q));
    if (tail <= tol) break;
  }
  return static_cast<double>(-two_pi * y + 24 * sum);
}

double DeltaModular(EllipticTau tau, double tol) { return std::exp(LogAbsDelta(tau, tol)); }

double FaltingsHeightEc(EllipticTau tau) {
  double const y = tau.value().imag();
  return -(12 * std::log(2 * std::numbers::pi) + LogAbsDelta(tau) + 6 * std::log(y)) / 12;
}

std::complex<double> MoebiusTransform(long a, long b, long c, long d, std::complex<double> tau) {
  if (a * d - b * c != 1) throw std::invalid_argument("matrix is not in SL₂(ℤ)");
  return (static_cast<double>(a) * tau + static_cast<double>(b)) /
         (static_cast<double>(c) * tau + static_cast<double>(d));
}

}  // namespace mlk
