#include <doctest.h>

#include <cmath>
#include <numbers>

#include "randers/error.hpp"
#include "randers/expression.hpp"
#include "randers/ode.hpp"
#include "randers/profile.hpp"

using namespace randers;

namespace {

// Central differences as an independent check on analytic derivatives.
double d1(const Profile::Fn& f, double r, double h = 1e-5) {
  return (f(r + h) - f(r - h)) / (2 * h);
}

}  // namespace

TEST_CASE("paraboloid closed forms") {
  for (double mu : {0.3, 1.0, 2.5}) {
    const Profile p = make_paraboloid(mu);
    for (double r : {0.0, 0.1, 1.0, 3.7, 19.0}) {
      const double q = mu * mu * r * r + 1.0;
      CHECK(p.m(r) == doctest::Approx(r / std::sqrt(q)).epsilon(1e-14));
      CHECK(p.m1(r) == doctest::Approx(std::pow(q, -1.5)).epsilon(1e-12));
      CHECK(p.m2(r) == doctest::Approx(-3 * mu * mu * r * std::pow(q, -2.5)).epsilon(1e-12));
      if (r > 0.0)
        CHECK(gauss_curvature(p, r) == doctest::Approx(3 * mu * mu / (q * q)).epsilon(1e-12));
    }
  }
}

TEST_CASE("paraboloid derivatives agree with finite differences") {
  const Profile p = make_paraboloid(1.0);
  for (double r : {0.3, 1.0, 2.0}) {
    CHECK(p.m1(r) == doctest::Approx(d1([&](double x) { return p.m(x); }, r)).epsilon(1e-8));
    CHECK(p.m2(r) == doctest::Approx(d1([&](double x) { return p.m1(x); }, r)).epsilon(1e-8));
  }
}

TEST_CASE("vertex limit of the curvature") {
  const Profile p = make_paraboloid(1.0);
  CHECK(gauss_curvature(p, 0.0) == doctest::Approx(3.0).epsilon(1e-8));
}

TEST_CASE("expression profiles") {
  SUBCASE("derivatives by forward differentiation match closed forms") {
    const Profile e = Profile::from_expressions("r/sqrt(mu^2*r^2+1)", std::nullopt,
                                                std::nullopt, 1.0, 20.0);
    const Profile p = make_paraboloid(1.0);
    for (double r : {0.0, 0.5, 2.0, 10.0}) {
      CHECK(e.m(r) == doctest::Approx(p.m(r)).epsilon(1e-14));
      CHECK(e.m1(r) == doctest::Approx(p.m1(r)).epsilon(1e-13));
      CHECK(e.m2(r) == doctest::Approx(p.m2(r)).epsilon(1e-12));
    }
  }
  SUBCASE("grammar") {
    const Expression x = Expression::parse("-2^2 + sin(pi/2)*3 - 8/4/2");
    CHECK(x(0.0, 0.0) == doctest::Approx(-4.0 + 3.0 - 1.0));
    CHECK(Expression::parse("2^3^2")(0.0, 0.0) == doctest::Approx(512.0));
    const Jet j = Expression::parse("r^3 + cos(r)").jet(0.7, 0.0);
    CHECK(j.d1 == doctest::Approx(3 * 0.49 - std::sin(0.7)));
    CHECK(j.d2 == doctest::Approx(6 * 0.7 - std::cos(0.7)));
  }
  SUBCASE("malformed input") {
    CHECK_THROWS_AS(Expression::parse("r +"), Error);
    CHECK_THROWS_AS(Expression::parse("foo(r)"), Error);
    CHECK_THROWS_AS(Expression::parse("(r"), Error);
  }
  SUBCASE("vertex conditions are enforced") {
    CHECK_THROWS_AS(Profile::from_expressions("2*r", std::nullopt, std::nullopt, 1.0, 5.0), Error);
    CHECK_THROWS_AS(Profile::from_expressions("r+1", std::nullopt, std::nullopt, 1.0, 5.0), Error);
  }
}

TEST_CASE("with_mu rebuilds the geometry") {
  const Profile p = make_paraboloid(1.0).with_mu(0.5);
  CHECK(p.mu() == 0.5);
  CHECK(p.m(2.0) == doctest::Approx(2.0 / std::sqrt(2.0)));
  const Profile flat = Profile::from_expressions("sin(r)", std::nullopt, std::nullopt, 0.0, 3.0);
  CHECK(flat.with_mu(0.2).mu() == 0.2);
}

TEST_CASE("von Mangoldt, parallels and boundedness") {
  const Profile p = make_paraboloid(1.0);
  const auto grid = radius_grid(20.0, 0.01);
  CHECK(is_von_mangoldt(p, grid).holds);
  CHECK(geodesic_parallels(p, grid).empty());
  CHECK(boundedness_margin(p, grid) == doctest::Approx(1.0 - 20.0 / std::sqrt(401.0)).epsilon(1e-12));

  // m = r/(1+r^2) has its maximum 1/2 at r = 1 and curvature that grows again.
  const Profile bump = Profile::from_expressions("r/(1+r^2)", std::nullopt, std::nullopt, 1.0, 10.0);
  const auto g2 = radius_grid(10.0, 0.005);
  const auto par = geodesic_parallels(bump, g2);
  REQUIRE(par.size() == 1);
  CHECK(par[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_FALSE(is_von_mangoldt(bump, g2).holds);
}

TEST_CASE("invalid parameters") {
  CHECK_THROWS_AS(make_paraboloid(0.0), Error);
  CHECK_THROWS_AS(make_paraboloid(-1.0), Error);
  CHECK_THROWS_AS(make_paraboloid(1.0, 0.0), Error);
}

TEST_CASE("angle helpers") {
  CHECK(reduce_angle(-0.5) == doctest::Approx(2 * std::numbers::pi - 0.5));
  CHECK(reduce_angle(7.0) == doctest::Approx(7.0 - 2 * std::numbers::pi));
  CHECK(wrap_angle(3 * std::numbers::pi / 2) == doctest::Approx(-std::numbers::pi / 2));
  CHECK(wrap_angle(-std::numbers::pi) == doctest::Approx(std::numbers::pi));
}

TEST_CASE("Dormand-Prince step on y' = y") {
  auto f = [](double, const ode::Vec<1>& y) { return ode::Vec<1>{y[0]}; };
  const ode::Vec<1> y0{1.0};
  const auto t = ode::dopri5_trial<1>(f, 0.0, y0, f(0.0, y0), 0.1, {1e-12, 1e-12});
  CHECK(t.y[0] == doctest::Approx(std::exp(0.1)).epsilon(1e-9));
}
