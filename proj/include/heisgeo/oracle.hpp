#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "heisgeo/core.hpp"

namespace heisgeo {

inline constexpr std::uint64_t kDefaultOracleSeed = 0x5EED;

/// Thrown when no restart of a brute-force oracle converges within the iteration cap.
class NonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleOptions {
  int restarts = 4;
  int max_iterations = 100000;  // total L-BFGS iterations per restart
};

struct OracleResult {
  double value = 0.0;               // best admissible length found
  double constraint_residual = 0.0; // |area - z| of the best polyline (cc oracle only)
  int iterations = 0;               // L-BFGS iterations over all restarts
  int converged_restarts = 0;
  std::vector<Point> vertices;      // best polyline, from the origin to the target
};

/// Upper estimate of dcc(0, p) from an n-segment planar polyline of signed
/// area p.z. Polylines lift to horizontal curves, so every feasible candidate
/// bounds the distance from above. Throws NonConvergenceError.
OracleResult brute_force_cc_distance(const Point& p, int segments, std::mt19937_64 rng = std::mt19937_64{kDefaultOracleSeed},
                                     const OracleOptions& options = {});

/// Upper estimate of dr(0, p) from an n-segment chain of left-translated
/// one-parameter subgroups, minimized over the interior vertices.
OracleResult brute_force_r_distance(const Point& p, double zeta, int segments,
                                    std::mt19937_64 rng = std::mt19937_64{kDefaultOracleSeed},
                                    const OracleOptions& options = {});

namespace oracle_detail {

/// Riemannian length of the subgroup segment from a to b: the Maurer-Cartan
/// derivative is constant, (dx, dy, dz - (a.x b.y - a.y b.x)/2).
double segment_r_length(const Point& a, const Point& b, double zeta);

/// Objective and gradient over the interior vertices, exposed for testing.
/// `interior` packs the free vertices (x, y, z per vertex for the R chain, x, y
/// for the planar chain); an empty `gradient` skips the derivative.
double r_chain_objective(std::span<const double> interior, const Point& target, double zeta,
                         std::span<double> gradient);
double cc_chain_length(std::span<const double> interior, const AbelianVector& target, std::span<double> gradient);
double cc_chain_area(std::span<const double> interior, const AbelianVector& target, std::span<double> gradient);

}  // namespace oracle_detail
}  // namespace heisgeo
