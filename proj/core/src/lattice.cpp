#include "mlk/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <tuple>

#include "mlk/enumeration.hpp"
#include "sobol_points.hpp"

namespace mlk {

namespace {

void CheckDim(GramMatrix const& y, Eigen::Index size) {
  if (size != y.dim()) {
    throw std::invalid_argument("dimension mismatch: expected " + std::to_string(y.dim()) +
                                ", got " + std::to_string(size));
  }
}

// (g, a, b) with a·x + b·y = g = gcd(x, y) ≥ 0.
std::tuple<std::int64_t, std::int64_t, std::int64_t> ExtendedGcd(std::int64_t x, std::int64_t y) {
  std::int64_t old_r = x, r = y;
  std::int64_t old_s = 1, s = 0;
  std::int64_t old_t = 0, t = 1;
  while (r != 0) {
    std::int64_t const q = old_r / r;
    std::tie(old_r, r) = std::make_tuple(r, old_r - q * r);
    std::tie(old_s, s) = std::make_tuple(s, old_s - q * s);
    std::tie(old_t, t) = std::make_tuple(t, old_t - q * t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

struct ReducedPoint {
  Eigen::VectorXd floor;
  Eigen::VectorXd fraction;
  Eigen::VectorXd coordinates;  // fraction in the reduced basis
};

ReducedPoint Reduce(GramMatrix const& y, Eigen::VectorXd const& x) {
  ReducedPoint p;
  p.floor = x.array().floor().matrix();
  p.fraction = x - p.floor;
  p.coordinates = y.reduced_basis_inverse().cast<double>() * p.fraction;
  return p;
}

// Nearest-plane rounding in reduced coordinates; returns the squared distance.
double NearestPlane(Eigen::MatrixXd const& r, Eigen::VectorXd const& t, Eigen::VectorXd& k) {
  int const n = static_cast<int>(t.size());
  k.resize(n);
  double dist_sq = 0;
  for (int i = n - 1; i >= 0; --i) {
    double c = t[i];
    for (int j = i + 1; j < n; ++j) c += r(i, j) / r(i, i) * (t[j] - k[j]);
    k[i] = std::round(c);
    dist_sq += r(i, i) * r(i, i) * (c - k[i]) * (c - k[i]);
  }
  return dist_sq;
}

}  // namespace

IntervalEstimate::IntervalEstimate(double lo, double hi) : lo(lo), hi(hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
    throw std::invalid_argument("invalid interval [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "]");
  }
}

double Norm(GramMatrix const& y, Eigen::VectorXd const& x) {
  CheckDim(y, x.size());
  return std::sqrt(std::max(0.0, x.dot(y.entries() * x)));
}

LatticeVector ShortestVector(GramMatrix const& y) {
  return {y.shortest_vector(), y.first_minimum()};
}

double NearestPlaneDistance(GramMatrix const& y, Eigen::VectorXd const& x) {
  CheckDim(y, x.size());
  ReducedPoint const p = Reduce(y, x);
  Eigen::VectorXd k;
  return std::sqrt(NearestPlane(y.reduced_factor(), p.coordinates, k));
}

LatticeVector ClosestVector(GramMatrix const& y, Eigen::VectorXd const& x) {
  CheckDim(y, x.size());
  int const n = y.dim();
  ReducedPoint const p = Reduce(y, x);
  Eigen::VectorXd best_k;
  double best = NearestPlane(y.reduced_factor(), p.coordinates, best_k);
  double const margin = 1 + 1e-12;
  EnumerateEllipsoid(y.reduced_factor(), p.coordinates, best * margin + 1e-300,
                     [&](std::span<const std::int64_t> k, double dist_sq) {
                       if (dist_sq < best) {
                         best = dist_sq;
                         for (int i = 0; i < n; ++i) best_k[i] = static_cast<double>(k[i]);
                       }
                       return best * margin + 1e-300;
                     });
  Eigen::VectorXd const offset = y.reduced_basis().cast<double>() * best_k;
  LatticeVector result;
  result.m = (offset + p.floor).array().round().cast<std::int64_t>().matrix();
  result.length = Norm(y, p.fraction - offset);
  return result;
}

IntVector BezoutCofactors(IntVector const& v, std::int64_t& gcd) {
  IntVector c = IntVector::Zero(v.size());
  gcd = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    auto const [g, a, b] = ExtendedGcd(gcd, v[i]);
    c *= a;
    c[i] = b;
    gcd = g;
  }
  return c;
}

DeepPoint BezoutDeepPoint(GramMatrix const& y) {
  GramMatrix const inverse = y.Inverse();
  DeepPoint p;
  p.gamma = inverse.shortest_vector();
  std::int64_t gcd = 0;
  p.cofactors = BezoutCofactors(p.gamma, gcd);
  if (gcd != 1) {
    throw std::logic_error("shortest vector of Y⁻¹ is not primitive");
  }
  p.x = 0.5 * p.cofactors.cast<double>();
  p.certified_lo = 1 / (2 * inverse.first_minimum());
  return p;
}

IntervalEstimate MuInterval(GramMatrix const& y, std::int64_t samples) {
  if (samples < 1) throw std::invalid_argument("MuInterval: samples must be ≥ 1");
  int const n = y.dim();
  double lo = ClosestVector(y, BezoutDeepPoint(y).x).length;

  if (n <= 4) {
    Eigen::VectorXd corner(n);
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      for (int i = 0; i < n; ++i) corner[i] = (mask >> i) & 1u ? 0.5 : 0.0;
      lo = std::max(lo, ClosestVector(y, corner).length);
    }
  }

  std::vector<double> const points = internal::SobolPoints(n, samples);
  for (std::int64_t s = 0; s < samples; ++s) {
    Eigen::Map<const Eigen::VectorXd> point(points.data() + s * n, n);
    lo = std::max(lo, ClosestVector(y, point).length);
  }

  double const gs_sum = y.reduced_factor().diagonal().squaredNorm();
  double hi = 0.5 * std::sqrt(gs_sum);
  // lo is attained and hi is an upper bound; they can only cross by rounding.
  if (lo > hi) {
    if (lo - hi > 1e-12 * hi) throw std::logic_error("MuInterval: enclosure violated");
    hi = lo;
  }
  return IntervalEstimate(lo, hi);
}

}  // namespace mlk
