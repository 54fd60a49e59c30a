#include "heisgeo/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "heisgeo/geodesics.hpp"
#include "heisgeo/metrics.hpp"

namespace heisgeo {
namespace {

constexpr double kPi = std::numbers::pi;

// Limit of a sequence that approaches it at rate 1/x, from two terms.
double richardson(double x1, double v1, double x2, double v2) { return (x2 * v2 - x1 * v1) / (x2 - x1); }

struct PieceBuilder {
  std::vector<AbelianVector> vertices{AbelianVector{}};
  double area = 0.0;
  double length = 0.0;

  void segment_to(const AbelianVector& b) {
    const AbelianVector a = vertices.back();
    area += 0.5 * cross(a, b);
    length += norm(b - a);
    vertices.push_back(b);
  }

  void arc(const AbelianVector& center, double radius, double start, double sweep, int points_per_turn) {
    area += 0.5 * (radius * radius * sweep + radius * (center.u * (std::sin(start + sweep) - std::sin(start)) -
                                                       center.v * (std::cos(start + sweep) - std::cos(start))));
    length += radius * std::abs(sweep);
    const auto samples = sample_arc(center, radius, start, sweep, points_per_turn);
    vertices.insert(vertices.end(), samples.begin() + 1, samples.end());
  }
};

PlanarCurve curve_from(std::vector<AbelianVector> vertices) {
  std::vector<AbelianVector> unique;
  for (const auto& v : vertices) {
    if (unique.empty() || !(v == unique.back())) unique.push_back(v);
  }
  if (unique.size() < 2) unique.push_back(unique.back());
  return PlanarCurve::from_vertices(unique);
}

}  // namespace

bool BoundReport::all_pass() const {
  return std::all_of(records.begin(), records.end(), [](const BoundRecord& r) { return r.pass; });
}

BoundReport verify_bound(double zeta, const std::vector<Point>& points, double margin,
                         const BoundTolerances& tolerances) {
  if (!(zeta > 0.0)) throw std::invalid_argument("verify_bound: zeta must be positive");
  BoundReport report;
  report.zeta = zeta;
  report.margin = margin;
  const double threshold = std::pow(2.0, 1.5) * kPi / zeta;
  const double constant = 4.0 * kPi * kPi / (zeta * zeta);
  for (const Point& p : points) {
    const double dcc = cc_distance(p).value;
    if (!(dcc > threshold + margin)) {
      report.skipped.push_back(p);
      continue;
    }
    BoundRecord r;
    r.p = p;
    r.dcc = dcc;
    r.dr = r_distance(p, zeta).value;
    r.gap = dcc - r.dr;
    r.bound = constant / (dcc - threshold);
    r.pass = r.gap >= -tolerances.sign && r.gap <= r.bound + tolerances.slack;
    report.max_violation = std::max({report.max_violation, -r.gap, r.gap - r.bound});
    report.records.push_back(r);
  }
  report.n_points = static_cast<int>(report.records.size());
  return report;
}

std::vector<Point> default_bound_grid(std::uint64_t seed) {
  std::vector<Point> grid;
  for (double r : {5.0, 10.0, 20.0, 50.0, 100.0}) {
    for (int a = 0; a < 8; ++a) {
      const double angle = 2.0 * kPi * a / 8.0;
      for (double ratio : {0.0, 1.0, -1.0, 5.0, -5.0}) {
        grid.push_back({r * std::cos(angle), r * std::sin(angle), ratio * r * r});
      }
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> ratio(-5.0, 5.0);
  for (int i = 0; i < 800; ++i) {
    const double u = unit(rng);
    const double r = 5.0 + 95.0 * u * u;
    const double angle = 2.0 * kPi * unit(rng);
    grid.push_back({r * std::cos(angle), r * std::sin(angle), ratio(rng) * r * r});
  }
  return grid;
}

SharpnessReport sharpness_vertical(double zeta, const std::vector<double>& z_list) {
  if (!(zeta > 0.0)) throw std::invalid_argument("sharpness_vertical: zeta must be positive");
  if (z_list.size() < 2) throw std::invalid_argument("sharpness_vertical: at least two heights are required");
  SharpnessReport report;
  report.zeta = zeta;
  report.crossover_height = vertical_crossover_height(zeta);
  const double z2 = zeta * zeta;
  report.closed_form_limit = 2.0 * kPi * kPi / z2;
  report.four_pi_sq_constant = 4.0 * kPi * kPi / z2;
  for (double z : z_list) {
    if (!(z > report.crossover_height)) {
      throw std::invalid_argument("sharpness_vertical: heights must exceed the vertical crossover");
    }
    SharpnessRecord r;
    r.z = z;
    r.dcc = cc_distance({0.0, 0.0, z}).value;
    r.dr = r_distance({0.0, 0.0, z}, zeta).value;
    r.product = (r.dcc - r.dr) * r.dcc;
    r.closed_form = 4.0 * kPi * kPi / (z2 * (1.0 + std::sqrt(1.0 - kPi / (z2 * z))));
    report.records.push_back(r);
  }
  const auto& a = report.records[report.records.size() - 2];
  const auto& b = report.records.back();
  report.extrapolated_limit = richardson(a.z, a.product, b.z, b.product);
  report.matches_closed_form =
      std::abs(report.extrapolated_limit - report.closed_form_limit) <= 0.01 * report.closed_form_limit;
  report.matches_four_pi_sq =
      std::abs(report.extrapolated_limit - report.four_pi_sq_constant) <= 0.01 * report.four_pi_sq_constant;
  bool increasing = true;
  bool decreasing = true;
  for (std::size_t i = 1; i < report.records.size(); ++i) {
    const bool up = report.records[i].z > report.records[i - 1].z;
    const double dp = report.records[i].product - report.records[i - 1].product;
    if (up ? dp > 0.0 : dp < 0.0) decreasing = false;
    if (up ? dp < 0.0 : dp > 0.0) increasing = false;
  }
  report.monotone = increasing || decreasing;
  return report;
}

TiltedGapReport tilted_gap(double h, const std::vector<double>& R_list) {
  if (!std::isfinite(h)) throw std::invalid_argument("tilted_gap: h must be finite");
  TiltedGapReport report;
  report.h = h;
  report.target_limit = 2.0 * h;
  report.all_within_bound = true;
  for (double R : R_list) {
    if (!(R > 0.0)) throw std::invalid_argument("tilted_gap: R must be positive");
    TiltedGapRecord r;
    r.R = R;
    r.p = {0.0, 2.0 * R, 0.5 * kPi * R * R + 2.0 * h * R};
    r.d = cc_distance(r.p).value;
    r.d_tilted = tilted_cc_distance(r.p, h).value;
    r.gap = r.d - r.d_tilted;
    r.within_bound = std::abs(r.gap) <= 2.0 * std::abs(h) + 1e-6;
    report.all_within_bound = report.all_within_bound && r.within_bound;
    report.records.push_back(r);
  }
  if (report.records.size() >= 2) {
    const auto& a = report.records[report.records.size() - 2];
    const auto& b = report.records.back();
    report.extrapolated_limit = richardson(a.R, a.gap, b.R, b.gap);
  } else if (!report.records.empty()) {
    report.extrapolated_limit = report.records.back().gap;
  }
  return report;
}

DetourCurve build_detour_curve(const Point& p, double zeta, int points_per_turn) {
  if (!(zeta > 0.0)) throw std::invalid_argument("build_detour_curve: zeta must be positive");
  if (p.z == 0.0) {
    PieceBuilder pieces;
    pieces.segment_to(project(p));
    return {curve_from(pieces.vertices), 0.0, pieces.length, 0.0, DetourCase::Degenerate, project(p), {}, p,
            pieces.length};
  }
  const DistanceResult r = r_distance(p, zeta);
  if (r.witness.geodesic.family != GeodesicFamily::TypeII) {
    throw std::invalid_argument("build_detour_curve: the Riemannian minimizer is not a circle arc");
  }
  const GeodesicParams& g = r.witness.geodesic;
  const double T = r.witness.duration;
  const double k = g.k;
  const double radius = 1.0 / std::abs(k);
  const AbelianVector center = geodesic_circle_center(g);
  const double start = g.theta + (k < 0.0 ? kPi : 0.0);
  const double sweep = k * T;
  const bool case1 = std::abs(k) * T <= kPi;

  const AbelianVector lambda = case1 ? project(p) : 2.0 * center;
  const AbelianVector lambda_hat = (1.0 / norm(lambda)) * lambda;
  const AbelianVector lambda_perp = (k > 0.0 ? -1.0 : 1.0) * AbelianVector{-lambda_hat.v, lambda_hat.u};
  const double epsilon = std::abs(k) * T / (zeta * zeta * norm(lambda));
  const AbelianVector shift = epsilon * lambda_perp;

  PieceBuilder pieces;
  pieces.segment_to(shift);
  if (case1) {
    pieces.arc(center + shift, radius, start, sweep, points_per_turn);
    pieces.segment_to(lambda);
  } else {
    const double half = std::copysign(kPi, k);
    pieces.arc(center + shift, radius, start, half, points_per_turn);
    pieces.segment_to(lambda);
    pieces.arc(center, radius, start + half, sweep - half, points_per_turn);
  }
  const AbelianVector end = pieces.vertices.back();
  return {curve_from(pieces.vertices),
          epsilon,
          T,
          k,
          case1 ? DetourCase::Case1 : DetourCase::Case2,
          lambda,
          lambda_perp,
          {end.u, end.v, pieces.area},
          pieces.length};
}

}  // namespace heisgeo
