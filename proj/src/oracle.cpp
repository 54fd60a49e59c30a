#include "heisgeo/oracle.hpp"

#include <ceres/gradient_problem.h>
#include <ceres/gradient_problem_solver.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace heisgeo {
namespace {

constexpr double kPi = std::numbers::pi;
// Keeps the length differentiable at zero-length segments (normalized units).
constexpr double kSmoothing2 = 1e-24;
constexpr double kAreaTolerance = 1e-9;

struct PlanarView {
  std::span<const double> interior;
  AbelianVector target;
  std::size_t vertex_count() const { return interior.size() / 2 + 2; }
  AbelianVector operator[](std::size_t i) const {
    if (i == 0) return {};
    if (i == vertex_count() - 1) return target;
    return {interior[2 * (i - 1)], interior[2 * (i - 1) + 1]};
  }
};

struct SpatialView {
  std::span<const double> interior;
  Point target;
  std::size_t vertex_count() const { return interior.size() / 3 + 2; }
  Point operator[](std::size_t i) const {
    if (i == 0) return {};
    if (i == vertex_count() - 1) return target;
    const std::size_t o = 3 * (i - 1);
    return {interior[o], interior[o + 1], interior[o + 2]};
  }
};

class AugmentedLagrangian final : public ceres::FirstOrderFunction {
 public:
  AugmentedLagrangian(AbelianVector target, double area, int params)
      : target_(target), area_(area), params_(params), scratch_(params) {}

  bool Evaluate(const double* parameters, double* cost, double* gradient) const override {
    std::span<const double> x(parameters, params_);
    std::span<double> g = gradient ? std::span<double>(gradient, params_) : std::span<double>{};
    const double length = oracle_detail::cc_chain_length(x, target_, g);
    std::span<double> ga = gradient ? std::span<double>(scratch_) : std::span<double>{};
    const double c = oracle_detail::cc_chain_area(x, target_, ga) - area_;
    *cost = length - multiplier * c + 0.5 * penalty * c * c;
    if (gradient) {
      const double w = -multiplier + penalty * c;
      for (int i = 0; i < params_; ++i) gradient[i] += w * scratch_[i];
    }
    return std::isfinite(*cost);
  }
  int NumParameters() const override { return params_; }

  double multiplier = 0.0;
  double penalty = 10.0;

 private:
  AbelianVector target_;
  double area_;
  int params_;
  mutable std::vector<double> scratch_;
};

class RiemannianChain final : public ceres::FirstOrderFunction {
 public:
  RiemannianChain(Point target, double zeta, int params) : target_(target), zeta_(zeta), params_(params) {}

  bool Evaluate(const double* parameters, double* cost, double* gradient) const override {
    std::span<const double> x(parameters, params_);
    std::span<double> g = gradient ? std::span<double>(gradient, params_) : std::span<double>{};
    *cost = oracle_detail::r_chain_objective(x, target_, zeta_, g);
    return std::isfinite(*cost);
  }
  int NumParameters() const override { return params_; }

 private:
  Point target_;
  double zeta_;
  int params_;
};

ceres::GradientProblemSolver::Options solver_options(int max_iterations) {
  ceres::GradientProblemSolver::Options options;
  options.line_search_direction_type = ceres::LBFGS;
  options.max_lbfgs_rank = 20;
  options.max_num_iterations = std::max(1, max_iterations);
  options.function_tolerance = 1e-13;
  options.gradient_tolerance = 1e-9;
  options.parameter_tolerance = 1e-13;
  options.logging_type = ceres::SILENT;
  return options;
}

// Smooth random perturbation of the chord t -> t*target with both ends fixed.
struct Bump {
  AbelianVector a, b;
  double lift;
};

Bump random_bump(std::mt19937_64& rng, bool flat) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> amp(0.2, 1.0);
  if (flat) return {{}, {}, 0.0};
  const double e = angle(rng);
  const double spread = std::uniform_real_distribution<double>(0.25 * kPi, 0.75 * kPi)(rng);
  return {amp(rng) * AbelianVector{std::cos(e), std::sin(e)},
          amp(rng) * AbelianVector{std::cos(e + spread), std::sin(e + spread)},
          std::uniform_real_distribution<double>(-0.5, 0.5)(rng)};
}

AbelianVector bump_at(const Bump& bump, const AbelianVector& target, double t) {
  return t * target + std::sin(kPi * t) * bump.a + std::sin(2.0 * kPi * t) * bump.b;
}

// Reflection across the line through the origin and `target` (the x-axis when
// target is 0): fixes both ends and flips the sign of the balayage area.
AbelianVector reflect(const AbelianVector& v, const AbelianVector& target) {
  const double n = norm(target);
  const AbelianVector d = n > 0.0 ? (1.0 / n) * target : AbelianVector{1.0, 0.0};
  return 2.0 * dot(v, d) * d - v;
}

double sign_of(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// Moves along the area gradient to hit the prescribed area exactly; the area is
// quadratic along any straight line in vertex space.
void restore_area(std::vector<double>& x, const AbelianVector& target, double area) {
  std::vector<double> g(x.size());
  const double current = oracle_detail::cc_chain_area(x, target, g);
  const double residual = current - area;
  if (residual == 0.0) return;
  double slope = 0.0;
  for (double gi : g) slope += gi * gi;
  if (slope == 0.0) return;
  // quadratic coefficient: area of the perturbation polyline with zero ends
  const double curvature = oracle_detail::cc_chain_area(g, {}, {});
  double alpha;
  if (std::abs(curvature) < 1e-300) {
    alpha = -residual / slope;
  } else {
    const double disc = slope * slope - 4.0 * curvature * residual;
    if (disc < 0.0) {
      alpha = -residual / slope;
    } else {
      // root of smallest magnitude, written without cancellation
      const double q = -0.5 * (slope + std::sqrt(disc));
      alpha = residual / q;
    }
  }
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += alpha * g[i];
}

double exact_planar_length(const std::vector<double>& x, const AbelianVector& target) {
  PlanarView view{x, target};
  double total = 0.0;
  for (std::size_t i = 1; i < view.vertex_count(); ++i) total += norm(view[i] - view[i - 1]);
  return total;
}

double exact_r_length(const std::vector<double>& x, const Point& target, double zeta) {
  SpatialView view{x, target};
  double total = 0.0;
  for (std::size_t i = 1; i < view.vertex_count(); ++i) {
    total += oracle_detail::segment_r_length(view[i - 1], view[i], zeta);
  }
  return total;
}

void check_segments(int segments) {
  if (segments < 8) throw std::invalid_argument("brute-force oracle: at least 8 segments are required");
}

}  // namespace

namespace oracle_detail {

double segment_r_length(const Point& a, const Point& b, double zeta) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double c = (b.z - a.z) - 0.5 * (a.x * b.y - a.y * b.x);
  return std::sqrt(dx * dx + dy * dy + zeta * zeta * c * c);
}

double r_chain_objective(std::span<const double> interior, const Point& target, double zeta,
                         std::span<double> gradient) {
  SpatialView view{interior, target};
  const std::size_t m = view.vertex_count();
  const double z2 = zeta * zeta;
  if (!gradient.empty()) std::fill(gradient.begin(), gradient.end(), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const Point a = view[i];
    const Point b = view[i + 1];
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double c = (b.z - a.z) - 0.5 * (a.x * b.y - a.y * b.x);
    const double len = std::sqrt(dx * dx + dy * dy + z2 * c * c + kSmoothing2);
    total += len;
    if (gradient.empty()) continue;
    const double wc = z2 * c / len;
    if (i >= 1) {
      const std::size_t o = 3 * (i - 1);
      gradient[o] += -dx / len - 0.5 * wc * b.y;
      gradient[o + 1] += -dy / len + 0.5 * wc * b.x;
      gradient[o + 2] += -wc;
    }
    if (i + 2 < m) {
      const std::size_t o = 3 * i;
      gradient[o] += dx / len + 0.5 * wc * a.y;
      gradient[o + 1] += dy / len - 0.5 * wc * a.x;
      gradient[o + 2] += wc;
    }
  }
  return total;
}

double cc_chain_length(std::span<const double> interior, const AbelianVector& target, std::span<double> gradient) {
  PlanarView view{interior, target};
  const std::size_t m = view.vertex_count();
  if (!gradient.empty()) std::fill(gradient.begin(), gradient.end(), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const AbelianVector d = view[i + 1] - view[i];
    const double len = std::sqrt(d.u * d.u + d.v * d.v + kSmoothing2);
    total += len;
    if (gradient.empty()) continue;
    if (i >= 1) {
      gradient[2 * (i - 1)] -= d.u / len;
      gradient[2 * (i - 1) + 1] -= d.v / len;
    }
    if (i + 2 < m) {
      gradient[2 * i] += d.u / len;
      gradient[2 * i + 1] += d.v / len;
    }
  }
  return total;
}

double cc_chain_area(std::span<const double> interior, const AbelianVector& target, std::span<double> gradient) {
  PlanarView view{interior, target};
  const std::size_t m = view.vertex_count();
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < m; ++i) area += 0.5 * cross(view[i], view[i + 1]);
  if (!gradient.empty()) {
    for (std::size_t i = 1; i + 1 < m; ++i) {
      const AbelianVector prev = view[i - 1];
      const AbelianVector next = view[i + 1];
      gradient[2 * (i - 1)] = 0.5 * (next.v - prev.v);
      gradient[2 * (i - 1) + 1] = 0.5 * (prev.u - next.u);
    }
  }
  return area;
}

}  // namespace oracle_detail

namespace {

// Segment counts of the coarse-to-fine ladder, ending at `segments`.
std::vector<int> refinement_ladder(int segments) {
  std::vector<int> ladder{segments};
  while (ladder.back() % 2 == 0 && ladder.back() / 2 >= 16) ladder.push_back(ladder.back() / 2);
  std::reverse(ladder.begin(), ladder.end());
  return ladder;
}

// Inserts the midpoint of every segment; length and area are unchanged.
std::vector<double> refine_planar(const std::vector<double>& x, const AbelianVector& target) {
  PlanarView view{x, target};
  std::vector<double> out;
  for (std::size_t i = 1; i < view.vertex_count(); ++i) {
    const AbelianVector mid = 0.5 * (view[i - 1] + view[i]);
    out.push_back(mid.u);
    out.push_back(mid.v);
    if (i + 1 < view.vertex_count()) {
      out.push_back(view[i].u);
      out.push_back(view[i].v);
    }
  }
  return out;
}

// Splits every subgroup segment a exp(xi) into a exp(xi/2) exp(xi/2).
std::vector<double> refine_spatial(const std::vector<double>& x, const Point& target) {
  SpatialView view{x, target};
  std::vector<double> out;
  for (std::size_t i = 1; i < view.vertex_count(); ++i) {
    const Point a = view[i - 1];
    const Point b = view[i];
    const double c = (b.z - a.z) - 0.5 * (a.x * b.y - a.y * b.x);
    const Point mid = mul(a, {0.5 * (b.x - a.x), 0.5 * (b.y - a.y), 0.5 * c});
    out.insert(out.end(), {mid.x, mid.y, mid.z});
    if (i + 1 < view.vertex_count()) out.insert(out.end(), {b.x, b.y, b.z});
  }
  return out;
}

// Augmented-Lagrangian solve at a fixed segment count. Returns false when the
// iteration budget runs out first.
bool solve_planar_level(std::vector<double>& x, const AbelianVector& target, double area, int& budget) {
  const int params = static_cast<int>(x.size());
  auto* objective = new AugmentedLagrangian(target, area, params);
  ceres::GradientProblem problem(objective);
  double previous_violation = std::numeric_limits<double>::infinity();
  for (int outer = 0; outer < 200 && budget > 0; ++outer) {
    ceres::GradientProblemSolver::Summary summary;
    ceres::Solve(solver_options(budget), problem, x.data(), &summary);
    budget -= static_cast<int>(summary.iterations.size());
    const double violation = oracle_detail::cc_chain_area(x, target, {}) - area;
    if (summary.termination_type == ceres::CONVERGENCE && std::abs(violation) < kAreaTolerance) return true;
    objective->multiplier -= objective->penalty * violation;
    if (std::abs(violation) > 0.25 * previous_violation) objective->penalty *= 2.0;
    previous_violation = std::abs(violation);
  }
  return false;
}

bool solve_spatial_level(std::vector<double>& x, const Point& target, double zeta, int& budget) {
  ceres::GradientProblem problem(new RiemannianChain(target, zeta, static_cast<int>(x.size())));
  ceres::GradientProblemSolver::Summary summary;
  ceres::Solve(solver_options(budget), problem, x.data(), &summary);
  budget -= static_cast<int>(summary.iterations.size());
  return summary.termination_type == ceres::CONVERGENCE;
}

}  // namespace

OracleResult brute_force_cc_distance(const Point& p, int segments, std::mt19937_64 rng, const OracleOptions& options) {
  check_segments(segments);
  OracleResult result;
  const double scale = std::max(std::hypot(p.x, p.y), std::sqrt(std::abs(p.z)));
  if (scale == 0.0) {
    result.vertices = {Point{}, Point{}};
    result.converged_restarts = 1;
    return result;
  }
  const AbelianVector target{p.x / scale, p.y / scale};
  const double area = p.z / (scale * scale);
  const std::vector<int> ladder = refinement_ladder(segments);

  double best = std::numeric_limits<double>::infinity();
  std::vector<double> best_x;
  double best_residual = 0.0;
  std::normal_distribution<double> noise(0.0, 1e-3);

  for (int restart = 0; restart < options.restarts; ++restart) {
    const Bump bump = random_bump(rng, false);
    const int coarse = ladder.front();
    std::vector<double> x(2 * (coarse - 1));
    for (int i = 1; i < coarse; ++i) {
      const double t = static_cast<double>(i) / coarse;
      const AbelianVector v = bump_at(bump, target, t);
      x[2 * (i - 1)] = v.u + noise(rng);
      x[2 * (i - 1) + 1] = v.v + noise(rng);
    }
    if (area != 0.0 && sign_of(oracle_detail::cc_chain_area(x, target, {})) != sign_of(area)) {
      for (int i = 0; i + 1 < coarse; ++i) {
        const AbelianVector r = reflect({x[2 * i], x[2 * i + 1]}, target);
        x[2 * i] = r.u;
        x[2 * i + 1] = r.v;
      }
    }

    int budget = options.max_iterations;
    bool converged = true;
    for (std::size_t level = 0; level < ladder.size() && converged; ++level) {
      if (level > 0) x = refine_planar(x, target);
      converged = solve_planar_level(x, target, area, budget);
    }
    result.iterations += options.max_iterations - budget;
    if (!converged) continue;
    ++result.converged_restarts;
    restore_area(x, target, area);
    const double length = exact_planar_length(x, target);
    if (length < best) {
      best = length;
      best_x = x;
      best_residual = std::abs(oracle_detail::cc_chain_area(x, target, {}) - area) * scale * scale;
    }
  }
  if (result.converged_restarts == 0) {
    throw NonConvergenceError("brute_force_cc_distance: no restart converged within the iteration cap");
  }
  result.value = best * scale;
  result.constraint_residual = best_residual;
  PlanarView view{best_x, target};
  double z = 0.0;
  result.vertices.push_back({});
  for (std::size_t i = 1; i < view.vertex_count(); ++i) {
    z += 0.5 * cross(view[i - 1], view[i]) * scale * scale;
    result.vertices.push_back({view[i].u * scale, view[i].v * scale, z});
  }
  return result;
}

OracleResult brute_force_r_distance(const Point& p, double zeta, int segments, std::mt19937_64 rng,
                                    const OracleOptions& options) {
  check_segments(segments);
  if (!(zeta > 0.0)) throw std::invalid_argument("brute_force_r_distance: zeta must be positive");
  OracleResult result;
  const double scale = std::max(std::hypot(p.x, p.y), std::sqrt(std::abs(p.z)));
  if (scale == 0.0) {
    result.vertices = {Point{}, Point{}};
    result.converged_restarts = 1;
    return result;
  }
  // dilation (x, y, z) -> (x/s, y/s, z/s^2) turns zeta into zeta*s and divides lengths by s
  const Point target{p.x / scale, p.y / scale, p.z / (scale * scale)};
  const double scaled_zeta = zeta * scale;
  const AbelianVector planar = project(target);
  const std::vector<int> ladder = refinement_ladder(segments);

  double best = std::numeric_limits<double>::infinity();
  std::vector<double> best_x;
  std::normal_distribution<double> noise(0.0, 1e-3);

  for (int restart = 0; restart < options.restarts; ++restart) {
    const Bump bump = random_bump(rng, restart == 0);
    const int coarse = ladder.front();
    std::vector<double> flat(2 * (coarse - 1));
    for (int i = 1; i < coarse; ++i) {
      const AbelianVector v = bump_at(bump, planar, static_cast<double>(i) / coarse);
      flat[2 * (i - 1)] = v.u + noise(rng);
      flat[2 * (i - 1) + 1] = v.v + noise(rng);
    }
    const bool flip = target.z != 0.0 && restart > 0 &&
                      sign_of(oracle_detail::cc_chain_area(flat, planar, {})) != sign_of(target.z);
    std::vector<double> x(3 * (coarse - 1));
    for (int i = 1; i < coarse; ++i) {
      const double t = static_cast<double>(i) / coarse;
      AbelianVector v{flat[2 * (i - 1)], flat[2 * (i - 1) + 1]};
      if (flip) v = reflect(v, planar);
      x[3 * (i - 1)] = v.u;
      x[3 * (i - 1) + 1] = v.v;
      x[3 * (i - 1) + 2] = t * target.z + bump.lift * std::sin(kPi * t) + noise(rng);
    }

    int budget = options.max_iterations;
    bool converged = true;
    for (std::size_t level = 0; level < ladder.size() && converged; ++level) {
      if (level > 0) x = refine_spatial(x, target);
      converged = solve_spatial_level(x, target, scaled_zeta, budget);
    }
    result.iterations += options.max_iterations - budget;
    if (!converged) continue;
    ++result.converged_restarts;
    const double length = exact_r_length(x, target, scaled_zeta);
    if (length < best) {
      best = length;
      best_x = x;
    }
  }
  if (result.converged_restarts == 0) {
    throw NonConvergenceError("brute_force_r_distance: no restart converged within the iteration cap");
  }
  result.value = best * scale;
  SpatialView view{best_x, target};
  for (std::size_t i = 0; i < view.vertex_count(); ++i) {
    const Point v = view[i];
    result.vertices.push_back({v.x * scale, v.y * scale, v.z * scale * scale});
  }
  return result;
}

}  // namespace heisgeo
