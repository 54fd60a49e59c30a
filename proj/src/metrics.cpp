#include "heisgeo/metrics.hpp"

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "heisgeo/numeric.hpp"

namespace heisgeo {
namespace {

constexpr double kPi = std::numbers::pi;

struct ArcSolution {
  double phi;        // turning angle kT in (0, 2pi)
  double half_sine;  // sin(phi/2), accurate also near 2pi
};

double toms748_root(const auto& f, double lo, double hi, double f_lo, double f_hi) {
  boost::uintmax_t max_iter = 200;
  const auto bracket = boost::math::tools::toms748_solve(
      f, lo, hi, f_lo, f_hi, boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits - 2),
      max_iter);
  return 0.5 * (bracket.first + bracket.second);
}

// Solves r2 * ratio(phi) + phi * inv_zeta2 = height for phi in (0, 2pi). The left
// side is strictly increasing from 0 to +inf, so the root is unique. The upper
// half is solved in eps = 2pi - phi.
ArcSolution solve_arc_angle(double r2, double height, double inv_zeta2) {
  auto lower = [&](double phi) {
    if (phi == 0.0) return -height;
    return r2 * arc_area_ratio(phi) + phi * inv_zeta2 - height;
  };
  const double at_half_turn = lower(kPi);
  if (at_half_turn >= 0.0) {
    const double phi = at_half_turn == 0.0 ? kPi : toms748_root(lower, 0.0, kPi, -height, at_half_turn);
    return {phi, std::sin(0.5 * phi)};
  }
  // decreasing in eps, +inf at eps -> 0
  auto upper = [&](double eps) {
    return r2 * arc_area_ratio_complement(eps) + (2.0 * kPi - eps) * inv_zeta2 - height;
  };
  double eps_lo = 0.5 * kPi;
  double f_lo = upper(eps_lo);
  for (int i = 0; i < 2100 && !(f_lo > 0.0); ++i) {
    eps_lo *= 0.5;
    f_lo = upper(eps_lo);
  }
  if (!(f_lo > 0.0)) throw std::runtime_error("solve_arc_angle: failed to bracket the root");
  const double eps = toms748_root(upper, eps_lo, kPi, f_lo, at_half_turn);
  return {2.0 * kPi - eps, std::sin(0.5 * eps)};
}

double normalize_angle(double a) { return std::remainder(a, 2.0 * kPi); }

// Initial angle theta such that the circle of signed turning angle phi from the
// origin ends in direction `heading` (polar angle of the endpoint).
double initial_angle(double heading, double signed_phi) {
  return normalize_angle(heading - 0.5 * kPi - 0.5 * signed_phi);
}

Witness straight_witness(const Point& p, GeodesicMetric metric, double zeta) {
  const double r = std::hypot(p.x, p.y);
  return {WitnessTag::Geodesic, GeodesicParams::type1(std::atan2(p.y, p.x), metric, zeta), r};
}

}  // namespace

void MetricSpec::validate() const {
  if (kind == MetricKind::Riemannian && !(zeta > 0.0 && std::isfinite(zeta))) {
    throw std::invalid_argument("MetricSpec: zeta must be positive");
  }
  if (kind == MetricKind::TiltedCC && !std::isfinite(tilt)) {
    throw std::invalid_argument("MetricSpec: tilt must be finite");
  }
}

DistanceResult cc_distance(const Point& p) {
  const double r = std::hypot(p.x, p.y);
  const double a = std::abs(p.z);
  const double sign = p.z < 0.0 ? -1.0 : 1.0;
  if (a == 0.0) {
    if (r == 0.0) return {};
    return {r, straight_witness(p, GeodesicMetric::CC, 1.0)};
  }
  if (r == 0.0) {
    // full circle of area a
    const double k = sign * std::sqrt(kPi / a);
    const double length = 2.0 * std::sqrt(kPi) * std::sqrt(a);
    return {length, {WitnessTag::Geodesic, GeodesicParams::type2_cc(k, 0.0), length}};
  }
  const ArcSolution arc = solve_arc_angle(r * r, a, 0.0);
  const double length = arc.phi * r / (2.0 * arc.half_sine);
  const double k = sign * 2.0 * arc.half_sine / r;
  const double theta = initial_angle(std::atan2(p.y, p.x), sign * arc.phi);
  return {length, {WitnessTag::Geodesic, GeodesicParams::type2_cc(k, theta), length}};
}

DistanceResult r_distance(const Point& p, double zeta) {
  if (!(zeta > 0.0 && std::isfinite(zeta))) throw std::invalid_argument("r_distance: zeta must be positive");
  const double inv_zeta2 = 1.0 / (zeta * zeta);
  const double r = std::hypot(p.x, p.y);
  const double a = std::abs(p.z);
  const double sign = p.z < 0.0 ? -1.0 : 1.0;
  if (a == 0.0) {
    if (r == 0.0) return {};
    return {r, straight_witness(p, GeodesicMetric::R, zeta)};
  }
  if (r == 0.0) {
    const double vertical = zeta * a;
    const double excess = a - 2.0 * kPi * inv_zeta2;
    if (excess > 0.0) {
      // closed TypeII circles with kT = 2pi: a = pi/k^2 + 2pi/zeta^2
      const double looped = 2.0 * std::sqrt(kPi) * std::sqrt(a - kPi * inv_zeta2);
      if (looped < vertical) {
        const double k = sign * std::sqrt(kPi / excess);
        return {looped, {WitnessTag::Geodesic, GeodesicParams::type2_r(k, 0.0, zeta), 2.0 * kPi / std::abs(k)}};
      }
    }
    return {vertical, {WitnessTag::Geodesic, GeodesicParams::type0(zeta), p.z}};
  }
  const ArcSolution arc = solve_arc_angle(r * r, a, inv_zeta2);
  const double inv_k = r / (2.0 * arc.half_sine);
  const double length = arc.phi * std::sqrt(inv_k * inv_k + inv_zeta2);
  const double k = sign / inv_k;
  const double theta = initial_angle(std::atan2(p.y, p.x), sign * arc.phi);
  return {length, {WitnessTag::Geodesic, GeodesicParams::type2_r(k, theta, zeta), arc.phi * inv_k}};
}

DistanceResult tilted_cc_distance(const Point& p, double h) {
  if (h == 0.0) return cc_distance(p);
  return cc_distance(conjugate({kTiltConjugationSign * h, 0.0, 0.0}, p));
}

DistanceResult distance_from_origin(const MetricSpec& spec, const Point& p) {
  spec.validate();
  switch (spec.kind) {
    case MetricKind::CC:
      return cc_distance(p);
    case MetricKind::Riemannian:
      return r_distance(p, spec.zeta);
    case MetricKind::TiltedCC:
      return tilted_cc_distance(p, spec.tilt);
  }
  throw std::invalid_argument("distance: unknown metric kind");
}

double distance(const MetricSpec& spec, const Point& p, const Point& q) {
  return distance_from_origin(spec, mul(inverse(p), q)).value;
}

double vertical_crossover_height(double zeta) {
  if (!(zeta > 0.0)) throw std::invalid_argument("vertical_crossover_height: zeta must be positive");
  const double inv_zeta2 = 1.0 / (zeta * zeta);
  // Type0 length minus the axis-circle length. The two candidate curves touch
  // tangentially at the crossover, so gap is convex with a double zero there:
  // bisect on the sign of its slope.
  auto gap = [&](double z) { return zeta * z - 2.0 * std::sqrt(kPi) * std::sqrt(z - kPi * inv_zeta2); };
  double a = kPi * inv_zeta2;
  double b = 2.0 * a;
  while (gap(b * (1.0 + 1e-7)) - gap(b * (1.0 - 1e-7)) <= 0.0) b *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const double d = 1e-7;
    if (gap(m + d * m) - gap(m - d * m) < 0.0) {
      a = m;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace heisgeo
