#include "heisgeo/core.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace heisgeo {

AbelianVector rotate(const AbelianVector& a, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * a.u - s * a.v, s * a.u + c * a.v};
}

bool is_finite(const Point& p) {
  return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
}

Point mul(const Point& p, const Point& q) {
  return {p.x + q.x, p.y + q.y, p.z + q.z + 0.5 * (p.x * q.y - p.y * q.x)};
}

Point inverse(const Point& p) { return {-p.x, -p.y, -p.z}; }

Point conjugate(const Point& g, const Point& p) { return mul(mul(g, p), inverse(g)); }

AbelianVector project(const Point& p) { return {p.x, p.y}; }

PlanarCurve::PlanarCurve(std::vector<CurveSample> samples) : samples_(std::move(samples)) {
  if (samples_.size() < 2) {
    throw std::invalid_argument("PlanarCurve: at least two samples are required");
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const auto& s = samples_[i];
    if (!std::isfinite(s.t) || !std::isfinite(s.point.u) || !std::isfinite(s.point.v)) {
      throw std::invalid_argument("PlanarCurve: non-finite sample");
    }
    if (i > 0 && !(s.t > samples_[i - 1].t)) {
      throw std::invalid_argument("PlanarCurve: times must be strictly increasing");
    }
  }
}

PlanarCurve PlanarCurve::from_vertices(std::span<const AbelianVector> vertices) {
  std::vector<CurveSample> samples;
  samples.reserve(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    samples.push_back({static_cast<double>(i), vertices[i]});
  }
  return PlanarCurve(std::move(samples));
}

double PlanarCurve::length() const {
  double total = 0.0;
  for (std::size_t i = 1; i < samples_.size(); ++i) {
    total += norm(samples_[i].point - samples_[i - 1].point);
  }
  return total;
}

PlanarCurve PlanarCurve::reversed() const {
  const double t_end = samples_.back().t;
  std::vector<CurveSample> out(samples_.rbegin(), samples_.rend());
  for (auto& s : out) s.t = t_end - s.t;
  return PlanarCurve(std::move(out));
}

PlanarCurve PlanarCurve::translated(const AbelianVector& offset) const {
  std::vector<CurveSample> out = samples_;
  for (auto& s : out) s.point += offset;
  return PlanarCurve(std::move(out));
}

PlanarCurve PlanarCurve::concatenated(const PlanarCurve& tail) const {
  std::vector<CurveSample> out = samples_;
  const AbelianVector shift = back() - tail.front();
  const double dt = samples_.back().t - tail.samples_.front().t;
  for (std::size_t i = 1; i < tail.samples_.size(); ++i) {
    out.push_back({tail.samples_[i].t + dt, tail.samples_[i].point + shift});
  }
  return PlanarCurve(std::move(out));
}

double balayage_area(const PlanarCurve& c) {
  const auto& s = c.samples();
  double area = 0.0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    area += 0.5 * cross(s[i - 1].point, s[i].point);
  }
  return area;
}

LiftResult lift_curve(const PlanarCurve& c, double tilt) {
  if (c.front().u != 0.0 || c.front().v != 0.0) {
    throw std::invalid_argument("lift_curve: curve must start at the origin");
  }
  const auto& s = c.samples();
  LiftResult result;
  result.z_profile.reserve(s.size());
  result.z_profile.push_back(0.0);
  double z = 0.0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    const AbelianVector& a = s[i - 1].point;
    const AbelianVector& b = s[i].point;
    const double dt = s[i].t - s[i - 1].t;
    const double du = (b.u - a.u) / dt;
    const double dv = (b.v - a.v) / dt;
    const double rate_a = tilt * dv + 0.5 * (a.u * dv - a.v * du);
    const double rate_b = tilt * dv + 0.5 * (b.u * dv - b.v * du);
    z += 0.5 * dt * (rate_a + rate_b);
    result.z_profile.push_back(z);
  }
  result.endpoint = {c.back().u, c.back().v, z};
  return result;
}

std::vector<AbelianVector> sample_arc(const AbelianVector& center, double radius, double start_angle,
                                      double sweep, int points_per_turn) {
  if (points_per_turn < 2) {
    throw std::invalid_argument("sample_arc: points_per_turn must be at least 2");
  }
  const double turns = std::abs(sweep) / (2.0 * std::numbers::pi);
  const int segments = std::max(2, static_cast<int>(std::ceil(turns * points_per_turn)));
  std::vector<AbelianVector> out;
  out.reserve(segments + 1);
  for (int i = 0; i <= segments; ++i) {
    const double a = start_angle + sweep * static_cast<double>(i) / segments;
    out.push_back(center + radius * AbelianVector{std::cos(a), std::sin(a)});
  }
  return out;
}

}  // namespace heisgeo
