#pragma once

#include <cstdint>
#include <vector>

#include <boost/random/sobol.hpp>

namespace mlk::internal {

// The first `count` points of the `dim`-dimensional Sobol sequence, stored
// point-major.
inline std::vector<double> SobolPoints(int dim, std::int64_t count) {
  boost::random::sobol_engine<std::uint32_t, 32> engine(dim);
  std::vector<double> points(static_cast<std::size_t>(count) * dim);
  for (double& p : points) p = static_cast<double>(engine()) * 0x1p-32;
  return points;
}

}  // namespace mlk::internal
