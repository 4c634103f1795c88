#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "mlk/gram_matrix.hpp"

namespace mlk {

// A certified enclosure lo ≤ quantity ≤ hi.
struct IntervalEstimate {
  double lo = 0;
  double hi = 0;

  // Throws std::invalid_argument unless lo ≤ hi and both are finite.
  IntervalEstimate(double lo, double hi);
  bool Contains(double value) const { return lo <= value && value <= hi; }
};

struct LatticeVector {
  IntVector m;
  // ‖m‖_Y for the shortest vector, ‖x − m‖_Y for the closest one.
  double length = 0;
};

struct DeepPoint {
  Eigen::VectorXd x;
  // Shortest vector γ of Y⁻¹ and the Bézout cofactors m with γᵀm = 1; x = m/2.
  IntVector gamma;
  IntVector cofactors;
  double certified_lo = 0;
};

// √(xᵀYx).
double Norm(GramMatrix const& y, Eigen::VectorXd const& x);

// Exact first minimum λ₁(Y) by exhaustive enumeration.
LatticeVector ShortestVector(GramMatrix const& y);

// Exact ψ_Y(x) = min_m ‖x − m‖_Y and a minimizer m.
LatticeVector ClosestVector(GramMatrix const& y, Eigen::VectorXd const& x);

// Upper bound on ψ_Y(x) from the nearest-plane candidate alone.
double NearestPlaneDistance(GramMatrix const& y, Eigen::VectorXd const& x);

// The half-integral point m/2 built from a shortest vector γ of Y⁻¹ and a
// solution of γᵀm = 1; its distance to ℤ^g is at least 1/(2λ₁(Y⁻¹)).
DeepPoint BezoutDeepPoint(GramMatrix const& y);

// Enclosure of the inhomogeneous minimum μ(Y) = max_x ψ_Y(x).  The lower end
// maximizes ψ over the Bézout point, the half-integral corners (g ≤ 4) and
// `samples` Sobol points; the upper end is the nearest-plane covering bound
// ½√(Σ‖b*_i‖²) of the reduced basis.
IntervalEstimate MuInterval(GramMatrix const& y, std::int64_t samples = 4096);

// Extended gcd over all coordinates: returns c with Σ c_i v_i = gcd(v) > 0.
IntVector BezoutCofactors(IntVector const& v, std::int64_t& gcd);

}  // namespace mlk
