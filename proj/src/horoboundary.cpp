#include "heisgeo/horoboundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "heisgeo/numeric.hpp"

namespace heisgeo {
namespace {

constexpr double kPi = std::numbers::pi;

double gaveau_open(double theta) {
  if (theta == 0.0) return 0.0;
  const double s = std::sin(theta);
  return 0.5 * phi_minus_sin(2.0 * theta) / (s * s);
}

void verify_gaveau_monotone() {
  static const bool monotone = [] {
    constexpr int nodes = 10000;
    double previous = -std::numeric_limits<double>::infinity();
    for (int i = 1; i < nodes; ++i) {
      const double value = gaveau_open(-kPi + 2.0 * kPi * i / nodes);
      if (!(value > previous)) return false;
      previous = value;
    }
    return true;
  }();
  if (!monotone) throw std::logic_error("gaveau_inverse: gaveau is not increasing on the verification grid");
}

void require_unit(const AbelianVector& v, const char* what) {
  if (!(std::abs(norm(v) - 1.0) <= 1e-12)) throw std::invalid_argument(what);
}

}  // namespace

ExtendedReal ExtendedReal::finite(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("ExtendedReal::finite: value must be finite");
  return {Kind::Finite, v};
}

ExtendedReal gaveau(double theta) {
  if (!(theta >= -kPi && theta <= kPi)) throw std::invalid_argument("gaveau: theta must lie in [-pi, pi]");
  if (theta == kPi) return ExtendedReal::plus_infinity();
  if (theta == -kPi) return ExtendedReal::minus_infinity();
  return ExtendedReal::finite(gaveau_open(theta));
}

double gaveau_inverse(const ExtendedReal& nu) {
  if (nu.kind == ExtendedReal::Kind::PlusInfinity) return kPi;
  if (nu.kind == ExtendedReal::Kind::MinusInfinity) return -kPi;
  verify_gaveau_monotone();
  const double target = std::abs(nu.value);
  if (target == 0.0) return 0.0;
  double lo = 0.0;
  double hi = kPi;
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (gaveau_open(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double theta = std::abs(gaveau_open(lo) - target) <= std::abs(gaveau_open(hi) - target) ? lo : hi;
  return std::copysign(theta, nu.value);
}

Horofunction Horofunction::vertical(const AbelianVector& w_inf) {
  Horofunction h{VerticalHorofunction{w_inf}};
  h.validate();
  return h;
}

Horofunction Horofunction::non_vertical(const AbelianVector& w_hat, double theta) {
  Horofunction h{NonVerticalHorofunction{w_hat, theta}};
  h.validate();
  return h;
}

void Horofunction::validate() const {
  if (const auto* v = std::get_if<VerticalHorofunction>(&form)) {
    if (!std::isfinite(v->w_inf.u) || !std::isfinite(v->w_inf.v)) {
      throw std::invalid_argument("Horofunction: w_inf must be finite");
    }
    return;
  }
  const auto& nv = std::get<NonVerticalHorofunction>(form);
  require_unit(nv.w_hat, "Horofunction: w_hat must be a unit vector");
  if (!(nv.theta >= -kPi && nv.theta <= kPi)) throw std::invalid_argument("Horofunction: theta must lie in [-pi, pi]");
}

void SequenceSpec::validate() const {
  if (n_max < 2) throw std::invalid_argument("SequenceSpec: n_max must be at least 2");
  if (const auto* v = std::get_if<VerticalSequence>(&form)) {
    if (!(v->z_rate > 0.0 && std::isfinite(v->z_rate))) throw std::invalid_argument("SequenceSpec: z_rate must be positive");
    if (!std::isfinite(v->w.u) || !std::isfinite(v->w.v)) throw std::invalid_argument("SequenceSpec: w must be finite");
    return;
  }
  require_unit(std::get<NonVerticalSequence>(form).direction, "SequenceSpec: direction must be a unit vector");
}

Point SequenceSpec::point(int n) const {
  validate();
  if (n < 1 || n > n_max) throw std::out_of_range("SequenceSpec::point: n outside [1, n_max]");
  const double s = n;
  if (const auto* v = std::get_if<VerticalSequence>(&form)) return {v->w.u, v->w.v, v->z_rate * s};
  const auto& nv = std::get<NonVerticalSequence>(form);
  double z;
  switch (nv.nu.kind) {
    case ExtendedReal::Kind::PlusInfinity:
      z = -s * s * s;
      break;
    case ExtendedReal::Kind::MinusInfinity:
      z = s * s * s;
      break;
    default:
      z = -0.25 * nv.nu.value * s * s;
  }
  return {s * nv.direction.u, s * nv.direction.v, z};
}

double horofunction_eval(const Horofunction& h, const Point& p) {
  h.validate();
  const AbelianVector w = project(p);
  if (const auto* v = std::get_if<VerticalHorofunction>(&h.form)) return norm(v->w_inf) - norm(v->w_inf - w);
  const auto& nv = std::get<NonVerticalHorofunction>(h.form);
  return dot(rotate(-nv.w_hat, nv.theta), w);
}

std::vector<double> empirical_horofunction(const SequenceSpec& spec, const MetricSpec& metric,
                                           const std::vector<Point>& grid, int n) {
  const Point pn = spec.point(n);
  const double base = distance_from_origin(metric, pn).value;
  std::vector<double> values;
  values.reserve(grid.size());
  for (const Point& x : grid) values.push_back(distance(metric, pn, x) - base);
  return values;
}

std::vector<Point> default_horofunction_grid() {
  std::vector<Point> grid;
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      for (int k = 0; k < 3; ++k) grid.push_back({-2.0 + i, -2.0 + j, -1.0 + k});
    }
  }
  return grid;
}

Horofunction classify_sequence(const SequenceSpec& spec) {
  spec.validate();
  if (const auto* v = std::get_if<VerticalSequence>(&spec.form)) return Horofunction::vertical(v->w);
  const auto& nv = std::get<NonVerticalSequence>(spec.form);
  return Horofunction::non_vertical(nv.direction, gaveau_inverse(nv.nu));
}

double almost_straight_defect(const std::vector<Point>& points, const MetricSpec& metric, std::size_t L) {
  if (L >= points.size()) throw std::out_of_range("almost_straight_defect: L must index a point");
  const std::size_t count = points.size();
  std::vector<double> from_L(count);
  for (std::size_t m = L; m < count; ++m) from_L[m] = distance(metric, points[L], points[m]);
  double worst = 0.0;
  for (std::size_t m = L; m < count; ++m) {
    for (std::size_t n = m; n < count; ++n) {
      worst = std::max(worst, from_L[m] + distance(metric, points[m], points[n]) - from_L[n]);
    }
  }
  return worst;
}

std::vector<double> busemann_defect(const Horofunction& h, const std::vector<Point>& points, const MetricSpec& metric) {
  std::vector<double> defects;
  defects.reserve(points.size());
  for (const Point& p : points) defects.push_back(horofunction_eval(h, p) + distance_from_origin(metric, p).value);
  return defects;
}

RayDefects ray_defects(const std::vector<TimedPoint>& samples, const MetricSpec& metric,
                       const std::vector<double>& N_list) {
  if (samples.empty()) throw std::invalid_argument("ray_defects: no samples");
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (!(samples[i].t > samples[i - 1].t)) throw std::invalid_argument("ray_defects: samples must be time-ordered");
  }
  const std::size_t count = samples.size();
  std::vector<double> arc(count, 0.0);
  std::vector<double> from_start(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (i > 0) arc[i] = arc[i - 1] + distance(metric, samples[i - 1].p, samples[i].p);
    from_start[i] = distance(metric, samples.front().p, samples[i].p);
  }
  // pair excesses are computed once and reduced per N over suffixes
  std::vector<std::vector<double>> pair(count);
  for (std::size_t s = 0; s < count; ++s) {
    pair[s].resize(count);
    for (std::size_t t = s; t < count; ++t) pair[s][t] = s == t ? 0.0 : distance(metric, samples[s].p, samples[t].p);
  }
  RayDefects out;
  for (double N : N_list) {
    const auto first = std::lower_bound(samples.begin(), samples.end(), N,
                                        [](const TimedPoint& a, double v) { return a.t < v; });
    if (first == samples.end()) throw std::invalid_argument("ray_defects: no samples at or beyond N");
    const std::size_t start = static_cast<std::size_t>(first - samples.begin());
    double delta = -std::numeric_limits<double>::infinity();
    double theta = -std::numeric_limits<double>::infinity();
    for (std::size_t s = start; s < count; ++s) {
      for (std::size_t t = s; t < count; ++t) {
        delta = std::max(delta, (arc[t] - arc[s]) - pair[s][t]);
        theta = std::max(theta, pair[s][t] + from_start[s] - samples[t].t);
      }
    }
    out.delta.push_back(delta);
    out.theta.push_back(theta);
  }
  return out;
}

}  // namespace heisgeo
