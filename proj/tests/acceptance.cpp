#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <string>
#include <vector>

#include "heisgeo/experiments.hpp"
#include "heisgeo/geodesics.hpp"
#include "heisgeo/horoboundary.hpp"
#include "heisgeo/metrics.hpp"
#include "heisgeo/oracle.hpp"

using namespace heisgeo;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, format, args...);
  return buffer;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Outcome vertical_cc() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (double z : {0.01, 0.1, 1.0, 10.0, 100.0, 1e4}) {
    worst = std::max(worst, std::abs(cc_distance({0, 0, z}).value - 2 * std::sqrt(kPi) * std::sqrt(z)));
  }
  const double t = seconds_since(start);
  return {worst < 1e-8 && t < 1.0, fmt("max error %.3e (< 1e-8), %.3f s (< 1 s)", worst, t)};
}

Outcome vertical_r() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (double z : {50.0, 100.0, 1e3, 1e6}) {
    worst = std::max(worst, std::abs(r_distance({0, 0, z}, 1.0).value - 2 * std::sqrt(kPi) * std::sqrt(z - kPi)));
  }
  const double t = seconds_since(start);
  return {worst < 1e-6 && t < 1.0, fmt("max error %.3e (< 1e-6), %.3f s (< 1 s)", worst, t)};
}

Outcome bound() {
  const auto start = std::chrono::steady_clock::now();
  const auto grid = default_bound_grid();
  std::string detail;
  bool pass = grid.size() == 1000;
  for (double zeta : {0.5, 1.0, 2.0}) {
    const BoundReport r = verify_bound(zeta, grid, 1.0, {1e-9, 1e-6});
    int violations = 0;
    for (const auto& rec : r.records) violations += rec.pass ? 0 : 1;
    pass = pass && violations == 0;
    detail += fmt("zeta=%g: %d violations in %d points (%zu below threshold); ", zeta, violations, r.n_points,
                  r.skipped.size());
  }
  const double t = seconds_since(start);
  return {pass && t < 30.0, detail + fmt("%.3f s (< 30 s)", t)};
}

Outcome sharpness() {
  const SharpnessReport s = sharpness_vertical(1.0, {1e6, 1e7, 1e8});
  const SharpnessRecord& last = s.records.back();
  const double expected = 4 * kPi * kPi / (1 + std::sqrt(1 - kPi / 1e8));
  const double rel = std::abs(last.product - expected) / expected;
  return {rel < 1e-3, fmt("product %.10f vs closed form %.10f, rel %.2e (< 1e-3); extrapolated limit %.6f; "
                          "constant 4pi^2 = %.6f matched: %s",
                          last.product, expected, rel, s.extrapolated_limit, s.four_pi_sq_constant,
                          s.matches_four_pi_sq ? "yes" : "no")};
}

Outcome tilted() {
  const auto start = std::chrono::steady_clock::now();
  std::vector<double> radii;
  for (double R = 0.01; R <= 1e4 * (1 + 1e-12); R *= std::sqrt(10.0)) radii.push_back(R);
  radii.back() = 1e4;
  const TiltedGapReport t = tilted_gap(0.5, radii);
  double worst = -INFINITY;
  for (const auto& rec : t.records) worst = std::max(worst, rec.gap);
  const double final_gap = t.records.back().gap;
  const double secs = seconds_since(start);
  const bool pass = worst <= 1.0 + 1e-6 && std::abs(final_gap - 1.0) <= 0.05 && secs < 10.0;
  return {pass, fmt("max gap %.9f over %zu radii (<= 1 + 1e-6), gap(1e4) = %.9f (within 5%% of 1), %.3f s",
                    worst, t.records.size(), final_gap, secs)};
}

Outcome oracle() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(kDefaultOracleSeed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  double worst_cc = 0.0, worst_r = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Point p{u(rng), u(rng), u(rng)};
    const std::uint64_t seed = kDefaultOracleSeed + i;
    const double cc = brute_force_cc_distance(p, 128, std::mt19937_64{seed}).value;
    const double r = brute_force_r_distance(p, 1.0, 128, std::mt19937_64{seed}).value;
    worst_cc = std::max(worst_cc, std::abs(cc - cc_distance(p).value) / cc_distance(p).value);
    worst_r = std::max(worst_r, std::abs(r - r_distance(p, 1.0).value) / r_distance(p, 1.0).value);
  }
  const double t = seconds_since(start);
  return {worst_cc < 1e-3 && worst_r < 1e-3 && t < 300.0,
          fmt("max rel error cc %.3e, r %.3e (< 1e-3), %.1f s (< 300 s)", worst_cc, worst_r, t)};
}

Outcome cut_time() {
  const auto g = GeodesicParams::type2_cc(1.0, 0.0);
  double worst = 0.0;
  for (double t : {0.5, 3.0, 6.0}) worst = std::max(worst, std::abs(cc_distance(geodesic_point(g, t)).value - t));
  const double t_past = 2 * kPi + 0.5;
  const double d_past = cc_distance(geodesic_point(g, t_past)).value;
  return {worst < 1e-8 && d_past < t_past - 1e-3,
          fmt("max |d - t| %.3e (< 1e-8) before the cut time; d = %.6f < t - 1e-3 = %.6f past it", worst, d_past,
              t_past - 1e-3)};
}

Outcome gaveau_roundtrip() {
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double nu = -50.0 + 100.0 * i / 199.0;
    worst = std::max(worst, std::abs(gaveau(gaveau_inverse(ExtendedReal::finite(nu))).value - nu));
  }
  const bool ends = gaveau_inverse(ExtendedReal::plus_infinity()) == kPi &&
                    gaveau_inverse(ExtendedReal::minus_infinity()) == -kPi;
  return {worst < 1e-9 && ends, fmt("max roundtrip error %.3e (< 1e-9); endpoints exact: %s", worst,
                                    ends ? "yes" : "no")};
}

Outcome horofunction_convergence() {
  const auto grid = default_horofunction_grid();
  const MetricSpec metric = MetricSpec::riemannian(1.0);
  bool pass = true;
  std::string detail;
  for (double nu : {0.0, kPi / 2}) {
    const SequenceSpec spec{NonVerticalSequence{{1, 0}, ExtendedReal::finite(nu)}, 160};
    const Horofunction h = classify_sequence(spec);
    double previous = INFINITY;
    bool monotone = true;
    detail += fmt("nu=%.4f sup|f_n-h|:", nu);
    for (int n : {10, 20, 40, 80, 160}) {
      const auto f = empirical_horofunction(spec, metric, grid, n);
      double sup = 0.0;
      for (std::size_t i = 0; i < grid.size(); ++i) sup = std::max(sup, std::abs(f[i] - horofunction_eval(h, grid[i])));
      monotone = monotone && sup < previous;
      previous = sup;
      detail += fmt(" %.5f", sup);
    }
    pass = pass && monotone && previous < 0.05;
    detail += fmt(" (monotone: %s, final < 0.05: %s); ", monotone ? "yes" : "no", previous < 0.05 ? "yes" : "no");
  }
  return {pass, detail};
}

Outcome busemann() {
  const MetricSpec metric = MetricSpec::riemannian(1.0);
  std::vector<Point> ray, up;
  for (int n = 1; n <= 160; ++n) {
    ray.push_back({double(n), 0, 0});
    up.push_back({0, 0, double(n)});
  }
  const double horizontal = busemann_defect(Horofunction::non_vertical({1, 0}, 0.0), ray, metric).back();
  const double vertical = busemann_defect(Horofunction::vertical({0, 0}), up, metric).back();
  return {std::abs(horizontal) < 0.02 && vertical > 10.0,
          fmt("horizontal ray final defect %.3e (< 0.02); vertical sequence final defect %.4f (> 10)", horizontal,
              vertical)};
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome determinism() {
  const auto dir = std::filesystem::temp_directory_path();
  const auto a = dir / "heisgeo_acceptance_a.json";
  const auto b = dir / "heisgeo_acceptance_b.json";
  const std::string cli = HEISGEO_CLI_PATH;
  const int ca = std::system((cli + " verify bound --zeta 1 --out " + a.string()).c_str());
  const int cb = std::system((cli + " verify bound --zeta 1 --out " + b.string()).c_str());
  const std::string ja = slurp(a), jb = slurp(b);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
  const bool same = !ja.empty() && ja == jb;
  return {ca == 0 && cb == 0 && same,
          fmt("exit codes %d/%d, %zu bytes, byte-identical: %s", ca, cb, ja.size(), same ? "yes" : "no")};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "vertical cc distance", vertical_cc},
      {2, "vertical Riemannian distance", vertical_r},
      {3, "cc versus Riemannian bound", bound},
      {4, "sharpness product", sharpness},
      {5, "tilted gap", tilted},
      {6, "oracle equivalence", oracle},
      {7, "cut time", cut_time},
      {8, "Gaveau roundtrip", gaveau_roundtrip},
      {9, "horofunction convergence", horofunction_convergence},
      {10, "Busemann dichotomy", busemann},
      {11, "determinism", determinism},
  };
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: acceptance [--only N]\n");
      return 2;
    }
  }
  int failures = 0;
  int ran = 0;
  for (const Criterion& c : criteria) {
    if (only != 0 && c.id != only) continue;
    ++ran;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("AC%-2d %s  %s: %s\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  if (ran == 0) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  return failures == 0 ? 0 : 1;
}
