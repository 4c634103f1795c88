#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace mlk {

// Schnorr–Euchner enumeration of the integer points k with
//   ‖R(center − k)‖² ≤ radius_sq,
// R upper triangular with positive diagonal.  For every such point the
// visitor is called as `visit(std::span<const std::int64_t> k, double dist_sq)`
// and returns the radius_sq to use from then on, which lets shortest and
// closest vector searches shrink the ellipsoid as they go.  At each level the
// candidates are visited in zig-zag order around the projected center, so
// their partial distances are nondecreasing.
template <typename Visitor>
void EnumerateEllipsoid(Eigen::MatrixXd const& r,
                        Eigen::VectorXd const& center,
                        double radius_sq,
                        Visitor&& visit) {
  int const n = static_cast<int>(r.rows());
  if (n == 0) return;

  std::vector<double> sq_diag(n);
  for (int i = 0; i < n; ++i) sq_diag[i] = r(i, i) * r(i, i);

  std::vector<std::int64_t> k(n);
  std::vector<double> c(n);
  std::vector<double> partial(n + 1, 0.0);  // partial[i]: levels ≥ i fixed.
  std::vector<std::int64_t> dx(n), ddx(n);

  auto project = [&](int level) {
    double s = center[level];
    for (int j = level + 1; j < n; ++j) {
      s += r(level, j) / r(level, level) * (center[j] - static_cast<double>(k[j]));
    }
    c[level] = s;
    k[level] = static_cast<std::int64_t>(std::round(s));
    dx[level] = ddx[level] = (s >= static_cast<double>(k[level])) ? 1 : -1;
  };
  auto next_sibling = [&](int level) {
    k[level] += dx[level];
    ddx[level] = -ddx[level];
    dx[level] = ddx[level] - dx[level];
  };

  int level = n - 1;
  project(level);
  for (;;) {
    double const diff = c[level] - static_cast<double>(k[level]);
    double const dist = partial[level + 1] + sq_diag[level] * diff * diff;
    if (dist <= radius_sq) {
      if (level == 0) {
        radius_sq = visit(std::span<const std::int64_t>(k), dist);
        next_sibling(0);
      } else {
        partial[level] = dist;
        --level;
        project(level);
      }
    } else {
      ++level;
      if (level == n) return;
      next_sibling(level);
    }
  }
}

}  // namespace mlk
