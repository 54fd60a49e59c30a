#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "heisgeo/core.hpp"

namespace heisgeo::testing {

inline std::vector<Point> random_points(std::size_t count, double box, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-box, box);
  std::vector<Point> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back({u(rng), u(rng), u(rng)});
  return out;
}

inline double max_abs_diff(const Point& a, const Point& b) {
  return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
}

}  // namespace heisgeo::testing
