#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "heisgeo/core.hpp"
#include "heisgeo/metrics.hpp"

namespace heisgeo {

/// Element of the extended real line: a finite value or one of the two infinities.
struct ExtendedReal {
  enum class Kind { Finite, PlusInfinity, MinusInfinity };
  Kind kind = Kind::Finite;
  double value = 0.0;  // meaningful only for Finite

  static ExtendedReal finite(double v);
  static ExtendedReal plus_infinity() { return {Kind::PlusInfinity, 0.0}; }
  static ExtendedReal minus_infinity() { return {Kind::MinusInfinity, 0.0}; }
  bool is_finite() const { return kind == Kind::Finite; }

  friend bool operator==(const ExtendedReal&, const ExtendedReal&) = default;
};

/// mu(theta) = (theta - sin theta cos theta) / sin^2 theta on [-pi, pi], with
/// mu(0) = 0 and mu(+-pi) = +-infinity. Throws std::invalid_argument outside the domain.
ExtendedReal gaveau(double theta);
/// Inverse of gaveau by bisection; +-infinity map to +-pi exactly.
double gaveau_inverse(const ExtendedReal& nu);

struct VerticalHorofunction {
  AbelianVector w_inf;
};

struct NonVerticalHorofunction {
  AbelianVector w_hat;  // unit vector
  double theta = 0.0;   // in [-pi, pi]
};

/// Horofunction of the Heisenberg group with a left-invariant metric.
/// Vertical: h(w + zZ) = |w_inf| - |w_inf - w|. NonVertical: h(w + zZ) =
/// <R_theta(-w_hat), w> with R_theta the anticlockwise rotation.
struct Horofunction {
  std::variant<VerticalHorofunction, NonVerticalHorofunction> form;

  static Horofunction vertical(const AbelianVector& w_inf);
  static Horofunction non_vertical(const AbelianVector& w_hat, double theta);
  /// Throws std::invalid_argument when w_hat is not a unit vector or theta is out of range.
  void validate() const;
};

struct VerticalSequence {
  AbelianVector w;
  double z_rate = 1.0;  // p_n = (w, z_rate * n)
};

/// p_n = (n * direction, -nu n^2 / 4); for nu = +-infinity, p_n = (n * direction, -+n^3).
struct NonVerticalSequence {
  AbelianVector direction;
  ExtendedReal nu;
};

struct SequenceSpec {
  std::variant<VerticalSequence, NonVerticalSequence> form;
  int n_max = 160;

  /// Throws std::invalid_argument when a parameter is out of range (n_max >= 2, z_rate > 0, unit direction).
  void validate() const;
  /// n-th point of the sequence, 1 <= n <= n_max.
  Point point(int n) const;
};

double horofunction_eval(const Horofunction& h, const Point& p);

/// f_n(x) = d(p_n, x) - d(p_n, o) at every grid point.
std::vector<double> empirical_horofunction(const SequenceSpec& spec, const MetricSpec& metric,
                                           const std::vector<Point>& grid, int n);

/// 5 x 5 x 3 lattice in [-2, 2]^2 x [-1, 1].
std::vector<Point> default_horofunction_grid();

/// Limit horofunction of the sequence family.
Horofunction classify_sequence(const SequenceSpec& spec);

/// max over L <= m <= n of d(p_L, p_m) + d(p_m, p_n) - d(p_L, p_n). Throws
/// std::out_of_range unless L < points.size().
double almost_straight_defect(const std::vector<Point>& points, const MetricSpec& metric, std::size_t L);

/// h(p_n) + d(o, p_n) for every point.
std::vector<double> busemann_defect(const Horofunction& h, const std::vector<Point>& points, const MetricSpec& metric);

struct TimedPoint {
  double t = 0.0;
  Point p;
};

struct RayDefects {
  std::vector<double> delta;  // length excess per N
  std::vector<double> theta;  // geodesic-ray excess per N
};

/// Discrete length excess and geodesic-ray excess over the sampled pairs
/// N <= s <= t. The curve length is the sum of distances between consecutive
/// samples. Throws std::invalid_argument when no sample has t >= N.
RayDefects ray_defects(const std::vector<TimedPoint>& samples, const MetricSpec& metric,
                       const std::vector<double>& N_list);

}  // namespace heisgeo
