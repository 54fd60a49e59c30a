#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace heisgeo {

/// Group element of the first Heisenberg group in exponential coordinates,
/// p = exp(xX + yY + zZ) with Z = [X, Y].
struct Point {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// Vector of the abelianization h/[h,h], coordinates w.r.t. (pi(X), pi(Y)).
struct AbelianVector {
  double u = 0.0;
  double v = 0.0;

  friend bool operator==(const AbelianVector&, const AbelianVector&) = default;

  AbelianVector& operator+=(const AbelianVector& o) {
    u += o.u;
    v += o.v;
    return *this;
  }
  AbelianVector& operator-=(const AbelianVector& o) {
    u -= o.u;
    v -= o.v;
    return *this;
  }
  friend AbelianVector operator+(AbelianVector a, const AbelianVector& b) { return a += b; }
  friend AbelianVector operator-(AbelianVector a, const AbelianVector& b) { return a -= b; }
  friend AbelianVector operator-(const AbelianVector& a) { return {-a.u, -a.v}; }
  friend AbelianVector operator*(double s, const AbelianVector& a) { return {s * a.u, s * a.v}; }
  friend AbelianVector operator*(const AbelianVector& a, double s) { return {s * a.u, s * a.v}; }
};

inline double dot(const AbelianVector& a, const AbelianVector& b) { return a.u * b.u + a.v * b.v; }
/// z-component of the planar cross product a x b.
inline double cross(const AbelianVector& a, const AbelianVector& b) { return a.u * b.v - a.v * b.u; }
inline double norm(const AbelianVector& a) { return std::hypot(a.u, a.v); }
/// Anticlockwise rotation by `angle`.
AbelianVector rotate(const AbelianVector& a, double angle);

bool is_finite(const Point& p);

Point mul(const Point& p, const Point& q);
Point inverse(const Point& p);
/// g * p * g^-1
Point conjugate(const Point& g, const Point& p);
AbelianVector project(const Point& p);

struct CurveSample {
  double t = 0.0;
  AbelianVector point;
};

/// Time-stamped polyline in h/[h,h]. Times strictly increase; at least two samples.
class PlanarCurve {
 public:
  explicit PlanarCurve(std::vector<CurveSample> samples);

  /// Samples the vertices at t = 0, 1, 2, ...
  static PlanarCurve from_vertices(std::span<const AbelianVector> vertices);

  const std::vector<CurveSample>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  const AbelianVector& front() const { return samples_.front().point; }
  const AbelianVector& back() const { return samples_.back().point; }

  /// Euclidean length of the polyline.
  double length() const;
  /// Same trace traversed backwards, re-timed as T - t.
  PlanarCurve reversed() const;
  PlanarCurve translated(const AbelianVector& offset) const;
  /// Appends `tail` shifted so that it starts where this curve ends; the first
  /// sample of `tail` is dropped.
  PlanarCurve concatenated(const PlanarCurve& tail) const;

 private:
  std::vector<CurveSample> samples_;
};

/// Signed balayage area 1/2 * int (x dy - y dx), exact on the polyline.
double balayage_area(const PlanarCurve& c);

struct LiftResult {
  Point endpoint;
  std::vector<double> z_profile;  // z of the lift at every sample
};

/// Horizontal lift starting at the identity for the plane span{X, Y + tilt*Z}.
/// Integrates z' = tilt*v' + (u v' - v u')/2 with the trapezoidal rule, which is
/// exact on linear segments. Throws std::invalid_argument unless the curve starts
/// at the origin.
LiftResult lift_curve(const PlanarCurve& c, double tilt = 0.0);

/// Polyline vertices on a circular arc, `points_per_turn` per full revolution
/// (at least 2 segments), both ends included.
std::vector<AbelianVector> sample_arc(const AbelianVector& center, double radius, double start_angle,
                                      double sweep, int points_per_turn = 4096);

}  // namespace heisgeo
