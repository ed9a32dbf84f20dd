#include <doctest.h>

#include <cmath>
#include <numbers>

#include "randers/error.hpp"
#include "randers/geodesics.hpp"
#include "randers/quadrature.hpp"

using namespace randers;

namespace {

constexpr double kPi = std::numbers::pi;

double chart_gap(const GeodesicState& a, const GeodesicState& b) {
  return std::hypot(a.r * std::cos(a.theta) - b.r * std::cos(b.theta),
                    a.r * std::sin(a.theta) - b.r * std::sin(b.theta));
}

Profile bump() {
  return Profile::from_expressions("r/(1+r^2)", std::nullopt, std::nullopt, 1.0, 10.0, "bump");
}

}  // namespace

TEST_CASE("meridians are exact") {
  const Profile p = make_paraboloid(1.0);
  const GeodesicPath out = integrate_h(p, h_unit_state(p, {1.0, 0.3}, 0.0), 2.0);
  CHECK(out.kind == PathKind::meridian);
  CHECK(out.samples.back().state.r == doctest::Approx(3.0));
  CHECK(out.samples.back().state.theta == doctest::Approx(0.3));

  const GeodesicPath through = integrate_h(p, h_unit_state(p, {1.0, 0.3}, kPi), 3.0);
  REQUIRE(through.vertex_s.has_value());
  CHECK(*through.vertex_s == doctest::Approx(1.0));
  CHECK(through.samples.back().state.r == doctest::Approx(2.0));
  CHECK(reduce_angle(through.samples.back().state.theta) == doctest::Approx(0.3 + kPi));
}

TEST_CASE("h-geodesics keep unit speed and the Clairaut constant") {
  const Profile p = make_paraboloid(1.0);
  const GeodesicPath g = integrate_h(p, h_unit_state(p, {2.0, 0.0}, 2.2), 40.0);
  const double nu = g.nu;
  CHECK(nu == doctest::Approx(p.m(2.0) * std::sin(2.2)));
  for (const PathSample& s : g.samples) {
    const double m = p.m(s.state.r);
    CHECK(std::abs(m * m * s.state.dtheta - nu) < 1e-9);
    CHECK(std::abs(h_norm_sq(p, s.state.r, s.state.velocity()) - 1.0) < 1e-12);
  }
}

TEST_CASE("twisted h-geodesics solve the Finsler spray") {
  // The spray integrates the Euler-Lagrange equations of F^2/2 directly and
  // knows nothing about the wind.
  const Profile p = make_paraboloid(1.0);
  for (double heading : {0.4, 1.3, 2.5}) {
    const GeodesicPath F = twist(integrate_h(p, h_unit_state(p, {1.5, 0.2}, heading), 6.0), 1.0);
    std::vector<double> stops;
    for (const PathSample& s : F.samples) stops.push_back(s.s);
    IntegrateOptions o;
    o.tol = 1e-12;
    const GeodesicState& st = F.samples.front().state;
    const GeodesicPath ref = integrate_F_spray(p, st.point(), st.velocity(), F.s_end(), o, stops);
    std::size_t j = 0;
    double worst = 0.0;
    for (const PathSample& s : F.samples) {
      while (j < ref.samples.size() && ref.samples[j].s < s.s) ++j;
      REQUIRE(j < ref.samples.size());
      worst = std::max(worst, chart_gap(s.state, ref.samples[j].state));
    }
    CHECK(worst < 1e-8);
    CHECK(f_unit_residual(p, F) < 1e-12);
  }
}

TEST_CASE("which curves are F-geodesics") {
  const Profile p = make_paraboloid(1.0);
  CHECK(f_geodesic_residual(p, twisted_meridian(p, {1.0, 0.0}, 1.0)) < 1e-7);
  CHECK(f_geodesic_residual(p, integrate_h(p, h_unit_state(p, {1.0, 0.0}, 0.0), 1.0)) > 1e-3);
  CHECK(f_geodesic_residual(p, integrate_h(p, h_unit_state(p, {2.0, 0.0}, 0.7), 1.0)) > 1e-3);
  CHECK(f_geodesic_residual(p, twist(integrate_h(p, h_unit_state(p, {2.0, 0.0}, 0.7), 5.0), 1.0)) < 1e-7);
}

TEST_CASE("integrate_F starts with the prescribed F-unit vector") {
  const Profile p = make_paraboloid(0.8);
  const SurfacePoint q{1.0, 0.5};
  const Tangent y = f_unit_tangent(p, q, 1.0);
  CHECK(eval_F(p, q, y) == doctest::Approx(1.0).epsilon(1e-14));
  const GeodesicPath F = integrate_F(p, q, y, 5.0);
  CHECK(F.tag == MetricTag::F);
  CHECK(F.samples.front().state.dr == doctest::Approx(y.y1));
  CHECK(F.samples.front().state.dtheta == doctest::Approx(y.y2));
  CHECK(f_unit_residual(p, F) < 1e-12);
}

TEST_CASE("exact_state matches a fresh integration") {
  const Profile p = make_paraboloid(1.0);
  const GeodesicState start = h_unit_state(p, {2.0, 0.0}, 2.0);
  const GeodesicPath g = integrate_h(p, start, 8.0);
  const double s = 5.4321;
  const GeodesicState a = exact_state(p, g, s);
  const GeodesicState b = integrate_h(p, start, s).samples.back().state;
  CHECK(chart_gap(a, b) < 1e-9);
  CHECK(chart_gap(a, g.at(s)) < 1e-5);  // dense output is only cubic
}

TEST_CASE("quadrature agrees with the ODE between radii") {
  const Profile p = make_paraboloid(1.0);
  const double nu = 0.5;
  const double rt = 1.0 / std::sqrt(3.0);  // m(rt) = 1/2
  const QuadratureSegment qs = quadrature_segment(p, rt, 3.0, nu, 1);
  const GeodesicPath g = integrate_h(p, h_unit_state(p, {rt, 0.0}, kPi / 2), 10.0);
  const double s = quad::bisect([&](double t) { return exact_state(p, g, t).r - 3.0; }, 0.0, 10.0, 1e-13);
  CHECK(qs.delta_s == doctest::Approx(s).epsilon(1e-9));
  CHECK(qs.delta_theta == doctest::Approx(exact_state(p, g, s).theta).epsilon(1e-9));
  CHECK(qs.delta_P2 == doctest::Approx(qs.delta_theta + qs.delta_s));
}

TEST_CASE("turning points and geodesic parallels on m = r/(1+r^2)") {
  const Profile b = bump();
  const auto grid = radius_grid(10.0, 0.01);
  const double nu = 0.4;
  const auto tp = turning_points(b, nu, grid);
  REQUIRE(tp.size() == 2);
  // nu r^2 - r + nu = 0
  CHECK(tp[0].r == doctest::Approx(0.5));
  CHECK(tp[1].r == doctest::Approx(2.0));
  const auto top = turning_points(b, 0.5, grid);
  REQUIRE_FALSE(top.empty());
  CHECK(top[0].geodesic_parallel);

  // Starting tangent to the parallel r = 1 stays on it.
  const GeodesicPath par = integrate_h(b, h_unit_state(b, {1.0, 0.0}, kPi / 2), 10.0);
  for (const PathSample& s : par.samples) CHECK(s.state.r == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("self-intersections of a geodesic loop around the vertex") {
  // From r = 2 inward to the turning radius and back. At radius r the two
  // passes differ in angle by D(r) = 2 (dtheta + mu ds) over [r_t, r]; every
  // level 2 pi k crossed by D is one transverse self-intersection. With
  // nu < 0 the twist fights the rotation and D dips below 0 first.
  const Profile p = make_paraboloid(1.0);
  for (double nu : {0.1, 0.3, -0.3, 0.6}) {
    const double rt = quad::bisect([&](double r) { return p.m(r) - std::abs(nu); }, 0.0, 2.0, 1e-15);
    const double sgn = nu > 0 ? 1.0 : -1.0;
    std::size_t expected = 0;
    double prev = std::nan("");
    for (int i = 1; i <= 400; ++i) {
      const double r = rt + (2.0 - rt) * i / 400.0;
      const QuadratureSegment qs = quadrature_segment(p, rt, r, std::abs(nu), 1);
      const double D = 2.0 * (sgn * qs.delta_theta + qs.delta_s);
      // D leaves 0 at the turning point itself; count from the first node on.
      if (std::isnan(prev)) {
        prev = D;
        continue;
      }
      const auto lo = static_cast<long>(std::floor(std::min(prev, D) / (2 * kPi)));
      const auto hi = static_cast<long>(std::floor(std::max(prev, D) / (2 * kPi)));
      expected += static_cast<std::size_t>(hi - lo);
      prev = D;
    }
    const QuadratureSegment all = quadrature_segment(p, rt, 2.0, std::abs(nu), 1);
    const double phi = std::asin(nu / p.m(2.0));
    const GeodesicPath h = integrate_h(p, h_unit_state(p, {2.0, 0.0}, kPi - phi), 2.0 * all.delta_s * (1 - 1e-9));
    CHECK(count_self_intersections(twist(h, 1.0)) == expected);
    CHECK(count_self_intersections(h) == 0);
  }
}

TEST_CASE("oscillating geodesics cross themselves repeatedly") {
  const Profile b = bump();
  const GeodesicPath h = integrate_h(b, h_unit_state(b, {1.0, 0.0}, std::asin(0.3 / 0.5)), 40.0);
  CHECK(count_self_intersections(h) >= 2);
  CHECK(count_self_intersections(twist(h, 1.0)) >= 2);
}

TEST_CASE("domain handling") {
  const Profile p = make_paraboloid(1.0, 5.0);
  const GeodesicPath g = integrate_h(p, h_unit_state(p, {4.0, 0.0}, 0.1), 10.0);
  CHECK(g.exited_domain);
  CHECK(g.samples.back().state.r <= 5.0 + 1e-9);
  CHECK_THROWS_AS(integrate_h(p, h_unit_state(p, {1.0, 0.0}, 0.0), -1.0), Error);
}
