#pragma once

#include <complex>

namespace mlk {

// A point of the upper half plane.
class EllipticTau {
 public:
  // Throws std::invalid_argument unless Im τ > 0.
  explicit EllipticTau(std::complex<double> tau);
  std::complex<double> value() const { return tau_; }

 private:
  std::complex<double> tau_;
};

// ln|Δ(τ)| for Δ(τ) = q ∏_{n≥1} (1 − q^n)^{24}, q = e^{2πiτ} (no (2π)^{12}
// factor).  The product is cut once the remaining factors change the result
// by at most `tol` in relative terms.
double LogAbsDelta(EllipticTau tau, double tol = 1e-15);
double DeltaModular(EllipticTau tau, double tol = 1e-15);

// Stable Faltings height of ℂ/(ℤ + τℤ) for a curve with potentially good
// reduction everywhere:  −(1/12) ln((2π)^{12} |Δ(τ)| (Im τ)^6).
double FaltingsHeightEc(EllipticTau tau);

// (aτ + b)/(cτ + d).
std::complex<double> MoebiusTransform(long a, long b, long c, long d, std::complex<double> tau);

}  // namespace mlk
