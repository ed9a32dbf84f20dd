#include <doctest.h>

#include <cmath>
#include <numbers>

#include "randers/error.hpp"
#include "randers/measure.hpp"

using namespace randers;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("parallel loop lengths") {
  const Profile p = make_paraboloid(1.0);
  for (double r0 : {0.5, 1.0, 4.0}) {
    const double m = p.m(r0);
    const ParallelLengths pl = parallel_lengths(p, r0);
    // F(d/dtheta) = m/(1 + mu m) and F(-d/dtheta) = m/(1 - mu m) for this wind.
    CHECK(pl.L_plus == doctest::Approx(2 * kPi * m / (1 + m)).epsilon(1e-13));
    CHECK(pl.L_minus == doctest::Approx(2 * kPi * m / (1 - m)).epsilon(1e-13));
    CHECK(pl.L_h == doctest::Approx(2 * kPi * m).epsilon(1e-13));
    CHECK(pl.L_plus < pl.L_h);
    CHECK(pl.L_h < pl.L_minus);
    CHECK(pl.loop_plus_closed == doctest::Approx(pl.L_plus).epsilon(1e-13));
    // The half-length constant is off by a factor of two; it stays flagged.
    CHECK(pl.ratio_plus == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(pl.ratio_minus == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_FALSE(pl.corollary_consistent);
  }
}

TEST_CASE("meeting point on the parallel") {
  const Profile p = make_paraboloid(1.0);
  const MeetingPoint mp = meeting_point(p, 1.0 / std::sqrt(3.0));
  CHECK(mp.s1 == doctest::Approx(1.5 * kPi).epsilon(1e-13));
  CHECK(mp.s2 == doctest::Approx(0.5 * kPi).epsilon(1e-13));
  CHECK(mp.common_length == doctest::Approx(0.5 * kPi).epsilon(1e-13));
  CHECK(mp.s1 + mp.s2 == doctest::Approx(2 * kPi));

  const Profile still = Profile::from_expressions("sin(r)", std::nullopt, std::nullopt, 0.0, 3.0);
  const MeetingPoint m0 = meeting_point(still, 1.0);
  CHECK(m0.s1 == doctest::Approx(kPi));
  CHECK(m0.s2 == doctest::Approx(kPi));
}

TEST_CASE("Clairaut relations along a twisted geodesic") {
  const Profile p = make_paraboloid(1.0);
  const GeodesicPath F = twist(integrate_h(p, h_unit_state(p, {2.0, 0.0}, 2.0), 30.0), 1.0);
  const ClairautReport r = clairaut_verify(p, F);
  CHECK(r.samples > 100);
  CHECK(r.max_h_residual < 1e-9);
  CHECK(r.max_F1_residual < 1e-9);
  CHECK(r.max_F2_residual < 1e-9);
  CHECK(r.max_momentum_residual < 1e-9);
  CHECK(r.max_inner_residual < 1e-9);
  CHECK_THROWS_AS(clairaut_verify(p, integrate_h(p, h_unit_state(p, {2.0, 0.0}, 2.0), 1.0)), Error);
}

TEST_CASE("momentum equals the derivative of F^2/2") {
  const Profile p = make_paraboloid(0.6);
  const GeodesicState st{1.3, 0.0, 0.4, -0.8};
  const double h = 1e-6;
  auto half_F2 = [&](double y2) {
    const double f = eval_F(p, st.point(), {st.dr, y2});
    return 0.5 * f * f;
  };
  const double fd = (half_F2(st.dtheta + h) - half_F2(st.dtheta - h)) / (2 * h);
  CHECK(momentum_p2(p, st) == doctest::Approx(fd).epsilon(1e-8));
}

TEST_CASE("lengths by quadrature") {
  const Profile p = make_paraboloid(1.0);
  const GeodesicPath tm = twisted_meridian(p, {0.5, 0.0}, 3.0);
  CHECK(f_length(p, tm) == doctest::Approx(3.0).epsilon(1e-12));
  const GeodesicPath g = integrate_h(p, h_unit_state(p, {1.0, 0.0}, 1.0), 4.0);
  // cubic dense output: the velocity is good to ~1e-7 between samples
  CHECK(h_length(p, g) == doctest::Approx(4.0).epsilon(1e-8));
}

TEST_CASE("distance from the vertex") {
  const Profile p = make_paraboloid(1.0);
  CHECK(distance_from_vertex(p, {3.0, 1.0}) == 3.0);
  const VertexShot shot = shoot_from_vertex(p, {3.0, 1.0});
  CHECK(shot.parameter_length == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(shot.f_length == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(std::abs(shot.miss) < 1e-9);
  // d_F from the vertex through the distance solver as well
  CHECK(distance_F(p, {0.0, 0.0}, {3.0, 1.0}).distance == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("h-distance: sweep against an ODE heading fan") {
  const Profile p = make_paraboloid(1.0);
  const SurfacePoint pairs[][2] = {{{1.0, 0.0}, {2.0, 2.0}},
                                   {{0.5, 0.0}, {3.0, 3.0}},
                                   {{2.0, 0.0}, {2.0, 2.5}},
                                   {{1.5, 1.0}, {0.7, 1.2}}};
  for (const auto& pr : pairs) {
    const HDistance d = distance_h(p, pr[0], pr[1]);
    FanOptions fan;
    fan.headings = 720;
    fan.max_length = d.distance + 0.5;
    fan.tol = 1e-12;
    const auto hits = shoot_fan(p, pr[0], pr[1], fan);
    REQUIRE_FALSE(hits.empty());
    CHECK(hits.front().length == doctest::Approx(d.distance).epsilon(1e-9));
    // never longer than the broken path through the vertex
    CHECK(d.distance <= pr[0].r + pr[1].r + 1e-12);
  }
}

TEST_CASE("h-distance special cases") {
  const Profile p = make_paraboloid(1.0);
  CHECK(distance_h(p, {1.0, 0.3}, {2.5, 0.3}).distance == doctest::Approx(1.5));
  // Through the vertex and short of the first conjugate point: the meridian wins.
  CHECK(distance_h(p, {1.0, 0.0}, {0.5, kPi}).distance == doctest::Approx(1.5));
  // Beyond it the broken meridian is beaten.
  CHECK(distance_h(p, {1.0, 0.0}, {2.0, kPi}).distance < 3.0 - 0.1);
  CHECK(distance_h(p, {1.0, 0.0}, {1.0, 0.0}).distance == doctest::Approx(0.0));
}

TEST_CASE("forward F-distance") {
  const Profile p = make_paraboloid(1.0);
  const SurfacePoint a{1.0, 0.0}, b{2.0, 2.0};
  const DistanceReport fwd = distance_F(p, a, b);
  const DistanceReport bwd = distance_F(p, b, a);
  CHECK(fwd.distance == doctest::Approx(1.195900657850204).epsilon(1e-9));
  CHECK(bwd.distance == doctest::Approx(2.059279514880883).epsilon(1e-9));
  CHECK(fwd.bracket_lo <= fwd.distance);
  CHECK(fwd.distance <= fwd.bracket_hi);

  // Independent check: the shortest F-geodesic found by shooting.
  FanOptions fan;
  fan.headings = 720;
  fan.max_length = fwd.distance + 0.5;
  fan.wind = 1.0;
  fan.tol = 1e-12;
  const auto hits = shoot_fan(p, a, b, fan);
  REQUIRE_FALSE(hits.empty());
  CHECK(hits.front().length == doctest::Approx(fwd.distance).epsilon(1e-8));

  // Points on a twisted meridian: distance equals the parameter.
  const GeodesicPath tm = twisted_meridian(p, a, 1.5);
  const GeodesicState end = tm.samples.back().state;
  CHECK(distance_F(p, a, end.point()).distance == doctest::Approx(1.5).epsilon(1e-9));
}

TEST_CASE("distance errors") {
  const Profile p = make_paraboloid(1.0, 5.0);
  CHECK_THROWS_AS(distance_F(p, {1.0, 0.0}, {6.0, 0.0}), Error);
  DistanceOptions o;
  o.t_max = 0.1;
  try {
    distance_F(p, {1.0, 0.0}, {3.0, 2.0}, o);
    FAIL("expected search_horizon");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::search_horizon);
  }
}

TEST_CASE("warp helpers") {
  const Profile p = make_paraboloid(1.0);
  CHECK(max_warp(p) == doctest::Approx(20.0 / std::sqrt(401.0)));
  CHECK(warp_increasing(p));
  CHECK_FALSE(warp_increasing(Profile::from_expressions("r/(1+r^2)", std::nullopt, std::nullopt, 1.0, 5.0)));
}
