#pragma once

#include <cstdint>
#include <vector>

#include "heisgeo/core.hpp"
#include "heisgeo/oracle.hpp"

namespace heisgeo {

struct BoundRecord {
  Point p;
  double dcc = 0.0;
  double dr = 0.0;
  double gap = 0.0;    // dcc - dr
  double bound = 0.0;  // (4 pi^2 / zeta^2) / (dcc - 2^{3/2} pi / zeta)
  bool pass = false;
};

struct BoundReport {
  double zeta = 1.0;
  double margin = 1.0;
  std::vector<BoundRecord> records;
  std::vector<Point> skipped;  // points with dcc <= threshold + margin
  double max_violation = 0.0;  // max(0, -gap, gap - bound) over the records
  int n_points = 0;            // number of evaluated records
  bool all_pass() const;
};

struct BoundTolerances {
  double sign = 1e-9;   // allowed negative gap
  double slack = 1e-6;  // allowed excess over the bound
};

/// Checks 0 <= dcc - dr <= bound at every point above the validity threshold.
BoundReport verify_bound(double zeta, const std::vector<Point>& points, double margin = 1.0,
                         const BoundTolerances& tolerances = {});

/// 200 structured points (radii {5,10,20,50,100} x 8 azimuths x heights
/// {0, +-r^2, +-5r^2}) followed by 800 seeded random points with radius in
/// [5, 100] and height ratio z/r^2 uniform in [-5, 5].
std::vector<Point> default_bound_grid(std::uint64_t seed = kDefaultOracleSeed);

struct SharpnessRecord {
  double z = 0.0;
  double dcc = 0.0;
  double dr = 0.0;
  double product = 0.0;      // (dcc - dr) * dcc from the solvers
  double closed_form = 0.0;  // 4 pi^2 / (zeta^2 (1 + sqrt(1 - pi / (zeta^2 z))))
};

struct SharpnessReport {
  double zeta = 1.0;
  std::vector<SharpnessRecord> records;
  double crossover_height = 0.0;  // numerically located, see vertical_crossover_height
  double extrapolated_limit = 0.0;
  double closed_form_limit = 0.0;    // 2 pi^2 / zeta^2
  double four_pi_sq_constant = 0.0;  // 4 pi^2 / zeta^2
  bool matches_closed_form = false;  // extrapolated limit within 1% of closed_form_limit
  bool matches_four_pi_sq = false;   // extrapolated limit within 1% of four_pi_sq_constant
  bool monotone = false;             // product monotone over the z ladder
};

/// Product (dcc - dr) * dcc on the vertical axis. Throws std::invalid_argument
/// for heights at or below the crossover, or fewer than two heights.
SharpnessReport sharpness_vertical(double zeta, const std::vector<double>& z_list);

struct TiltedGapRecord {
  double R = 0.0;
  Point p;                // (0, 2R, pi R^2 / 2 + 2hR)
  double d = 0.0;         // standard cc distance
  double d_tilted = 0.0;  // tilted cc distance
  double gap = 0.0;
  bool within_bound = false;  // |gap| <= 2|h| + 1e-6
};

struct TiltedGapReport {
  double h = 0.0;
  std::vector<TiltedGapRecord> records;
  double target_limit = 0.0;       // 2h
  double extrapolated_limit = 0.0;  // from the last two records assuming a 1/R rate
  bool all_within_bound = false;
};

TiltedGapReport tilted_gap(double h, const std::vector<double>& R_list);

enum class DetourCase { Case1, Case2, Degenerate };

struct DetourCurve {
  PlanarCurve curve;              // sampled polyline of the construction
  double epsilon = 0.0;
  double T = 0.0;                 // planar length of the Riemannian minimizer
  double k = 0.0;                 // signed curvature of the Riemannian minimizer
  DetourCase case_tag = DetourCase::Degenerate;
  AbelianVector lambda;           // endpoint of the shifted piece
  AbelianVector lambda_perp;      // unit shift direction
  Point endpoint;                 // lift endpoint from the exact pieces
  double length = 0.0;            // exact length of the pieces
};

/// Horizontal competitor for dcc(0, p) built from the Riemannian minimizer:
/// the circle arc is shifted by epsilon * lambda_perp so that the lift picks up
/// the missing area k T / zeta^2. Case1 shifts the whole arc (|k| T <= pi), Case2
/// only its first half circle. Returns Degenerate for z = 0 and throws
/// std::invalid_argument when the Riemannian minimizer is not a circle.
DetourCurve build_detour_curve(const Point& p, double zeta, int points_per_turn = 4096);

}  // namespace heisgeo
