#include "heisgeo/geodesics.hpp"

#include <numbers>
#include <stdexcept>

#include "heisgeo/numeric.hpp"

namespace heisgeo {

void GeodesicParams::validate() const {
  if (!std::isfinite(k) || !std::isfinite(theta) || !std::isfinite(zeta)) {
    throw std::invalid_argument("GeodesicParams: non-finite parameter");
  }
  if (!(zeta > 0.0)) throw std::invalid_argument("GeodesicParams: zeta must be positive");
  if (family == GeodesicFamily::TypeII && k == 0.0) {
    throw std::invalid_argument("GeodesicParams: TypeII requires k != 0");
  }
  if (family == GeodesicFamily::Type0 && metric != GeodesicMetric::R) {
    throw std::invalid_argument("GeodesicParams: Type0 exists only for the Riemannian metric");
  }
}

Point geodesic_point(const GeodesicParams& g, double t) {
  g.validate();
  switch (g.family) {
    case GeodesicFamily::Type0:
      return {0.0, 0.0, t};
    case GeodesicFamily::TypeI:
      return {t * std::cos(g.theta), t * std::sin(g.theta), 0.0};
    case GeodesicFamily::TypeII:
      break;
  }
  const double kt = g.k * t;
  const double s = std::sin(0.5 * kt);
  const double cos_minus_one = -2.0 * s * s;
  const double sin_kt = std::sin(kt);
  const double ct = std::cos(g.theta);
  const double st = std::sin(g.theta);
  Point p;
  p.x = (ct * cos_minus_one - st * sin_kt) / g.k;
  p.y = (st * cos_minus_one + ct * sin_kt) / g.k;
  // t/(2k) - sin(kt)/(2k^2)
  p.z = phi_minus_sin(kt) / (2.0 * g.k * g.k);
  if (g.metric == GeodesicMetric::R) p.z += kt / (g.zeta * g.zeta);
  return p;
}

double geodesic_speed(const GeodesicParams& g) {
  g.validate();
  switch (g.family) {
    case GeodesicFamily::Type0:
      return g.zeta;
    case GeodesicFamily::TypeI:
      return 1.0;
    case GeodesicFamily::TypeII:
      if (g.metric == GeodesicMetric::CC) return 1.0;
      return std::sqrt(1.0 + g.k * g.k / (g.zeta * g.zeta));
  }
  return 1.0;
}

double cut_time_bound(const GeodesicParams& g) {
  g.validate();
  if (g.family != GeodesicFamily::TypeII) {
    throw std::invalid_argument("cut_time_bound: only TypeII geodesics have a cut time");
  }
  return 2.0 * std::numbers::pi / std::abs(g.k);
}

AbelianVector geodesic_circle_center(const GeodesicParams& g) {
  g.validate();
  if (g.family != GeodesicFamily::TypeII) {
    throw std::invalid_argument("geodesic_circle_center: only TypeII geodesics are circles");
  }
  return {-std::cos(g.theta) / g.k, -std::sin(g.theta) / g.k};
}

GeodesicMatch match_cc_to_r(const GeodesicParams& cc, double zeta, double t) {
  cc.validate();
  if (cc.family != GeodesicFamily::TypeII || cc.metric != GeodesicMetric::CC) {
    throw std::invalid_argument("match_cc_to_r: expects a cc TypeII geodesic");
  }
  if (!(zeta > 0.0)) throw std::invalid_argument("match_cc_to_r: zeta must be positive");
  if (!(t >= 0.0)) throw std::invalid_argument("match_cc_to_r: t must be non-negative");
  const auto r = GeodesicParams::type2_r(cc.k, cc.theta, zeta);
  const double lift = cc.k * t / (zeta * zeta);
  return {geodesic_point(r, t), {0.0, 0.0, lift},
          2.0 * std::sqrt(std::numbers::pi) * std::sqrt(std::abs(lift))};
}

}  // namespace heisgeo
