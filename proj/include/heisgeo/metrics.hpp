#pragma once

#include <optional>

#include "heisgeo/core.hpp"
#include "heisgeo/geodesics.hpp"

namespace heisgeo {

enum class MetricKind { CC, Riemannian, TiltedCC };

/// Left-invariant metric selector.
///
/// CC: horizontal plane span{X, Y}, orthonormal. Riemannian: g = diag(1, 1, zeta^2)
/// in (X, Y, Z). TiltedCC: plane span{X, Y + tilt Z} with that pair orthonormal.
struct MetricSpec {
  MetricKind kind = MetricKind::CC;
  double zeta = 1.0;
  double tilt = 0.0;

  void validate() const;

  static MetricSpec cc() { return {MetricKind::CC, 1.0, 0.0}; }
  static MetricSpec riemannian(double zeta) { return {MetricKind::Riemannian, zeta, 0.0}; }
  static MetricSpec tilted(double tilt) { return {MetricKind::TiltedCC, 1.0, tilt}; }
};

enum class WitnessTag { Geodesic, Degenerate };

/// Optimal curve found by an exact solver: a closed-form geodesic run for
/// `duration` (signed for Type0, where t -> (0,0,t)), or Degenerate for the origin.
/// For the tilted metric the geodesic is the standard cc geodesic to the
/// conjugated point.
struct Witness {
  WitnessTag tag = WitnessTag::Degenerate;
  GeodesicParams geodesic;
  double duration = 0.0;
};

struct DistanceResult {
  double value = 0.0;
  Witness witness;
};

/// Exact dcc(0, p).
DistanceResult cc_distance(const Point& p);
/// Exact dr(0, p) for g = diag(1, 1, zeta^2). Throws std::invalid_argument for zeta <= 0.
DistanceResult r_distance(const Point& p, double zeta);
/// Exact distance from the origin for the tilted plane span{X, Y + h Z}.
DistanceResult tilted_cc_distance(const Point& p, double h);

/// Sign s of the conjugation exp(sX) p exp(-sX) that carries the tilted metric
/// back to the standard one. Calibrated in tests/test_metrics.cpp by lifting
/// standard Dido arcs through the tilted frame.
inline constexpr double kTiltConjugationSign = -1.0;

DistanceResult distance_from_origin(const MetricSpec& spec, const Point& p);
/// d(p, q) = d(0, p^-1 q).
double distance(const MetricSpec& spec, const Point& p, const Point& q);

/// Smallest height z > 0 at which dr(0, (0,0,z)) stops being the vertical
/// segment: found numerically by bisection on the Type0 minus axis-circle
/// candidate lengths. Analytically 2 pi / zeta^2.
double vertical_crossover_height(double zeta);

}  // namespace heisgeo
