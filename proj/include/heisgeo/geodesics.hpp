#pragma once

#include "heisgeo/core.hpp"

namespace heisgeo {

enum class GeodesicFamily { Type0, TypeI, TypeII };
enum class GeodesicMetric { CC, R };

/// Closed-form geodesic from the identity.
///
/// TypeI: horizontal line of angle theta. TypeII: planar circle of curvature k
/// (k < 0 runs clockwise) with initial direction (-sin theta, cos theta); for
/// metric R the height picks up an extra k*t/zeta^2. Type0: the vertical line
/// t -> (0,0,t), which only exists for metric R.
struct GeodesicParams {
  GeodesicFamily family = GeodesicFamily::TypeI;
  double k = 0.0;
  double theta = 0.0;
  GeodesicMetric metric = GeodesicMetric::CC;
  double zeta = 1.0;

  /// Throws std::invalid_argument when the family/metric/parameter combination is invalid.
  void validate() const;

  static GeodesicParams type0(double zeta) { return {GeodesicFamily::Type0, 0.0, 0.0, GeodesicMetric::R, zeta}; }
  static GeodesicParams type1(double theta, GeodesicMetric metric = GeodesicMetric::CC, double zeta = 1.0) {
    return {GeodesicFamily::TypeI, 0.0, theta, metric, zeta};
  }
  static GeodesicParams type2_cc(double k, double theta) {
    return {GeodesicFamily::TypeII, k, theta, GeodesicMetric::CC, 1.0};
  }
  static GeodesicParams type2_r(double k, double theta, double zeta) {
    return {GeodesicFamily::TypeII, k, theta, GeodesicMetric::R, zeta};
  }
};

Point geodesic_point(const GeodesicParams& g, double t);

/// Norm of the Maurer-Cartan derivative, constant along the geodesic.
double geodesic_speed(const GeodesicParams& g);

/// 2pi/|k|; beyond it a TypeII geodesic is not minimizing. Throws for other families.
double cut_time_bound(const GeodesicParams& g);

/// Center of the planar circle of a TypeII geodesic.
AbelianVector geodesic_circle_center(const GeodesicParams& g);

struct GeodesicMatch {
  Point r_point;    // the matched R geodesic at t
  Point offset;     // (0, 0, k t / zeta^2)
  double cc_gap;    // dcc between the two points, 2 sqrt(pi) sqrt(|k t| / zeta^2)
};

/// Pairs a cc TypeII geodesic with the R TypeII geodesic of the same (k, theta).
GeodesicMatch match_cc_to_r(const GeodesicParams& cc, double zeta, double t);

}  // namespace heisgeo
