#include <doctest.h>

#include <numbers>
#include <stdexcept>

#include "heisgeo/geodesics.hpp"
#include "heisgeo/horoboundary.hpp"
#include "support.hpp"

using namespace heisgeo;
using heisgeo::testing::random_points;

namespace {

constexpr double kPi = std::numbers::pi;

SequenceSpec non_vertical(AbelianVector dir, ExtendedReal nu, int n_max = 160) {
  return {NonVerticalSequence{dir, nu}, n_max};
}

double sup_error(const SequenceSpec& spec, const MetricSpec& metric, int n) {
  const auto grid = default_horofunction_grid();
  const auto fn = empirical_horofunction(spec, metric, grid, n);
  const Horofunction h = classify_sequence(spec);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) worst = std::max(worst, std::abs(fn[i] - horofunction_eval(h, grid[i])));
  return worst;
}

}  // namespace

TEST_CASE("gaveau function values and domain") {
  CHECK(gaveau(kPi / 2).value == doctest::Approx(kPi / 2));
  CHECK(gaveau(0.0) == ExtendedReal::finite(0.0));
  CHECK(gaveau(kPi) == ExtendedReal::plus_infinity());
  CHECK(gaveau(-kPi) == ExtendedReal::minus_infinity());
  CHECK(gaveau(1e-6).value == doctest::Approx(2e-6 / 3).epsilon(1e-9));
  CHECK_THROWS_AS(gaveau(4.0), std::invalid_argument);
  CHECK_THROWS_AS(gaveau(NAN), std::invalid_argument);
  for (int i = 1; i < 100; ++i) {
    const double t = kPi * i / 100;
    CHECK(gaveau(-t).value == -gaveau(t).value);
  }
}

TEST_CASE("gaveau is strictly increasing on a fine grid") {
  double previous = -INFINITY;
  for (int i = 1; i < 10000; ++i) {
    const double value = gaveau(-kPi + 2 * kPi * i / 10000).value;
    CHECK(value > previous);
    previous = value;
  }
}

TEST_CASE("gaveau inverse") {
  CHECK(gaveau_inverse(ExtendedReal::finite(0.0)) == 0.0);
  CHECK(gaveau_inverse(ExtendedReal::finite(kPi / 2)) == doctest::Approx(kPi / 2).epsilon(1e-14));
  CHECK(gaveau_inverse(ExtendedReal::plus_infinity()) == kPi);
  CHECK(gaveau_inverse(ExtendedReal::minus_infinity()) == -kPi);
  for (int nu = -10; nu <= 10; ++nu) {
    const double theta = gaveau_inverse(ExtendedReal::finite(nu));
    CHECK(std::abs(gaveau(theta).value - nu) < 1e-9);
    CHECK(std::abs(theta) < kPi);
  }
  CHECK_THROWS_AS(ExtendedReal::finite(INFINITY), std::invalid_argument);
}

TEST_CASE("closed-form horofunctions") {
  CHECK(horofunction_eval(Horofunction::vertical({1, 0}), {0, 0, 7}) == 0.0);
  CHECK(horofunction_eval(Horofunction::non_vertical({1, 0}, 0.0), {2, 5, 3}) == doctest::Approx(-2.0));
  CHECK(horofunction_eval(Horofunction::non_vertical({1, 0}, kPi / 2), {2, 5, 3}) == doctest::Approx(-5.0));
  CHECK_THROWS_AS(Horofunction::non_vertical({1, 1}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(Horofunction::non_vertical({1, 0}, 3.5), std::invalid_argument);
}

TEST_CASE("horofunctions ignore the height exactly and are 1-Lipschitz for dr") {
  const std::vector<Horofunction> hs{Horofunction::vertical({0, 0}), Horofunction::vertical({1.5, -0.5}),
                                     Horofunction::non_vertical({0.6, 0.8}, 1.0),
                                     Horofunction::non_vertical({0, -1}, -kPi)};
  const auto pts = random_points(80, 3.0, 9);
  for (const Horofunction& h : hs) {
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const Point& p = pts[i];
      CHECK(horofunction_eval(h, {p.x, p.y, p.z + 17.0}) == horofunction_eval(h, p));
      const double lip = std::abs(horofunction_eval(h, p) - horofunction_eval(h, pts[i + 1]));
      CHECK(lip <= distance(MetricSpec::riemannian(1.0), p, pts[i + 1]) + 1e-9);
    }
  }
}

TEST_CASE("sequence specs and classification") {
  SequenceSpec v{VerticalSequence{{1, 0}, 2.0}, 10};
  CHECK(v.point(3) == Point{1, 0, 6});
  const Horofunction hv = classify_sequence(v);
  CHECK(std::get<VerticalHorofunction>(hv.form).w_inf == AbelianVector{1, 0});
  const Horofunction h0 = classify_sequence(non_vertical({1, 0}, ExtendedReal::finite(0)));
  CHECK(std::get<NonVerticalHorofunction>(h0.form).theta == 0.0);
  const Horofunction hi = classify_sequence(non_vertical({0, 1}, ExtendedReal::plus_infinity()));
  CHECK(std::get<NonVerticalHorofunction>(hi.form).theta == kPi);
  CHECK(std::get<NonVerticalHorofunction>(hi.form).w_hat == AbelianVector{0, 1});
  CHECK(non_vertical({1, 0}, ExtendedReal::finite(2.0)).point(4) == Point{4, 0, -8});
  CHECK(non_vertical({0, 1}, ExtendedReal::plus_infinity()).point(2) == Point{0, 2, -8});
  CHECK(non_vertical({0, 1}, ExtendedReal::minus_infinity()).point(2) == Point{0, 2, 8});
  CHECK_THROWS_AS((SequenceSpec{VerticalSequence{{0, 0}, 1.0}, 1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((SequenceSpec{VerticalSequence{{0, 0}, -1.0}, 5}.validate()), std::invalid_argument);
  CHECK_THROWS_AS(non_vertical({2, 0}, ExtendedReal::finite(0)).validate(), std::invalid_argument);
  CHECK_THROWS_AS(v.point(11), std::out_of_range);
}

TEST_CASE("empirical horofunction of a horizontal ray is exact") {
  const auto spec = non_vertical({1, 0}, ExtendedReal::finite(0));
  for (int n : {2, 10, 50}) {
    const auto f = empirical_horofunction(spec, MetricSpec::riemannian(1.0), {{1, 0, 0}}, n);
    CHECK(f[0] == doctest::Approx(-1.0).epsilon(1e-12));
  }
}

TEST_CASE("vertical sequence through the origin tends to minus the planar norm") {
  SequenceSpec spec{VerticalSequence{{0, 0}, 1.0}, 1000000};
  const double f = empirical_horofunction(spec, MetricSpec::riemannian(1.0), {{1, 0, 0}}, 1000000)[0];
  CHECK(f == doctest::Approx(-1.0).epsilon(1e-2));
}

TEST_CASE("non-vertical empirical limits converge and improve under doubling") {
  const MetricSpec metric = MetricSpec::riemannian(1.0);
  for (double nu : {0.0, kPi / 2, -1.0, 3.0}) {
    const auto spec = non_vertical({1, 0}, ExtendedReal::finite(nu));
    double previous = sup_error(spec, metric, 10);
    for (int n : {20, 40, 80}) {
      const double e = sup_error(spec, metric, n);
      CHECK(e <= previous + 1e-6);
      previous = e;
    }
    CHECK(previous < 0.3);
  }
}

TEST_CASE("almost-straight defect") {
  const MetricSpec r1 = MetricSpec::riemannian(1.0);
  std::vector<Point> line;
  for (int n = 0; n < 20; ++n) line.push_back({double(n), 0, 0});
  CHECK(almost_straight_defect(line, r1, 0) < 1e-9);
  const auto g = GeodesicParams::type2_cc(1.0, 0.3);
  std::vector<Point> arc;
  for (int i = 0; i <= 30; ++i) arc.push_back(geodesic_point(g, 6.0 * i / 30));
  CHECK(almost_straight_defect(arc, MetricSpec::cc(), 0) < 1e-8);
  std::vector<Point> up;
  for (int n = 1; n <= 20; ++n) up.push_back({0, 0, double(n * n)});
  CHECK(almost_straight_defect(up, r1, 0) > 0.5);
  CHECK_THROWS_AS(almost_straight_defect(line, r1, 20), std::out_of_range);
}

TEST_CASE("Busemann defects") {
  const MetricSpec r1 = MetricSpec::riemannian(1.0);
  std::vector<Point> ray, up;
  for (int n = 10; n <= 160; n *= 2) {
    ray.push_back({double(n), 0, 0});
    up.push_back({0, 0, double(n)});
  }
  for (double d : busemann_defect(Horofunction::non_vertical({1, 0}, 0.0), ray, r1)) CHECK(std::abs(d) < 1e-12);
  const auto v = busemann_defect(Horofunction::vertical({0, 0}), up, r1);
  for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i] > v[i - 1]);
  CHECK(v.back() > 10.0);
  const Horofunction other = Horofunction::vertical({3, 0});
  const auto shifted = busemann_defect(other, up, r1);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double c = horofunction_eval(other, up[i]) - horofunction_eval(Horofunction::vertical({0, 0}), up[i]);
    CHECK(shifted[i] - v[i] == doctest::Approx(c));
  }
}

TEST_CASE("ray defects") {
  const MetricSpec cc = MetricSpec::cc();
  std::vector<TimedPoint> line;
  for (int i = 0; i <= 40; ++i) line.push_back({i * 0.5, geodesic_point(GeodesicParams::type1(0.7), i * 0.5)});
  const RayDefects straight = ray_defects(line, cc, {0.0, 5.0, 10.0});
  for (double d : straight.delta) CHECK(std::abs(d) < 1e-9);
  for (double t : straight.theta) CHECK(std::abs(t) < 1e-9);

  // one corner, then a horizontal line: the tail past the corner is a geodesic
  std::vector<TimedPoint> corner;
  for (int i = 0; i <= 10; ++i) corner.push_back({0.1 * i, {0, 0.1 * i, 0}});
  for (int i = 1; i <= 40; ++i) corner.push_back({1.0 + 0.5 * i, mul({0, 1, 0}, {0.5 * i, 0, 0})});
  const RayDefects c = ray_defects(corner, cc, {0.0, 1.0, 5.0});
  CHECK(c.delta[0] > 0.1);
  CHECK(std::abs(c.delta[1]) < 1e-9);
  CHECK(std::abs(c.delta[2]) < 1e-9);

  std::mt19937_64 rng(3);
  std::normal_distribution<double> step(0.0, 1.0);
  std::vector<TimedPoint> walk{{0.0, {}}};
  for (int i = 1; i <= 30; ++i) walk.push_back({double(i), mul(walk.back().p, {step(rng), step(rng), 0.3 * step(rng)})});
  const RayDefects w = ray_defects(walk, MetricSpec::riemannian(1.0), {0, 5, 10, 15, 20, 25});
  for (std::size_t i = 1; i < w.delta.size(); ++i) CHECK(w.delta[i] <= w.delta[i - 1] + 1e-12);

  CHECK_THROWS_AS(ray_defects(line, cc, {100.0}), std::invalid_argument);
  CHECK_THROWS_AS(ray_defects({}, cc, {0.0}), std::invalid_argument);
}
