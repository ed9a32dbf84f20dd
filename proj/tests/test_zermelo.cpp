#include <doctest.h>

#include <cmath>
#include <numbers>

#include "randers/error.hpp"
#include "randers/zermelo.hpp"

using namespace randers;

namespace {

// Navigation definition: y / F(y) - W has unit h-length.
double navigation_defect(const Profile& p, const SurfacePoint& x, const Tangent& y) {
  const double F = eval_F(p, x, y);
  const Tangent u{y.y1 / F, y.y2 / F - p.mu()};
  return std::sqrt(h_norm_sq(p, x.r, u)) - 1.0;
}

double F2(const Profile& p, const SurfacePoint& x, double a, double b) {
  const double f = eval_F(p, x, {a, b});
  return f * f;
}

}  // namespace

TEST_CASE("coefficients at r = 1 on the mu = 1 paraboloid") {
  const Profile p = make_paraboloid(1.0);
  const RandersData d = navigation_transform(p, 1.0);
  CHECK(d.lambda == doctest::Approx(0.5));
  CHECK(d.a11 == doctest::Approx(2.0));
  CHECK(d.a22 == doctest::Approx(2.0));
  CHECK(d.b2 == doctest::Approx(-1.0));
  CHECK(eval_F(p, {1.0, 0.0}, {1.0, 0.0}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(eval_F(p, {1.0, 0.0}, {0.0, 1.0}) == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-15));
  CHECK(eval_F(p, {1.0, 0.0}, {0.0, -1.0}) == doctest::Approx(std::sqrt(2.0) + 1.0).epsilon(1e-15));
}

TEST_CASE("F solves the navigation problem") {
  const Profile p = make_paraboloid(0.7);
  for (double r : {0.05, 0.8, 2.0, 9.0})
    for (double ang = 0.0; ang < 2 * std::numbers::pi; ang += 0.37) {
      const Tangent y{1.3 * std::cos(ang), 1.3 * std::sin(ang) / p.m(r)};
      CHECK(std::abs(navigation_defect(p, {r, 0.4}, y)) < 1e-13);
      CHECK(eval_F(p, {r, 0.0}, y) ==
            doctest::Approx(eval_F_navigation(p, {r, 0.0}, y)).epsilon(1e-13));
    }
}

TEST_CASE("F is positively homogeneous and not reversible") {
  const Profile p = make_paraboloid(1.0);
  const Tangent y{0.3, 0.9};
  CHECK(eval_F(p, {1.5, 0.0}, {0.6, 1.8}) == doctest::Approx(2.0 * eval_F(p, {1.5, 0.0}, y)));
  CHECK(eval_F(p, {1.5, 0.0}, {-0.3, -0.9}) != doctest::Approx(eval_F(p, {1.5, 0.0}, y)));
}

TEST_CASE("fundamental tensor is the Hessian of F^2/2") {
  const Profile p = make_paraboloid(1.0);
  const SurfacePoint x{1.2, 0.0};
  const double a = 0.4, b = -0.7, h = 1e-4;
  const Sym2 g = fundamental_tensor(p, x, {a, b});
  const double g11 = (F2(p, x, a + h, b) - 2 * F2(p, x, a, b) + F2(p, x, a - h, b)) / (2 * h * h);
  const double g22 = (F2(p, x, a, b + h) - 2 * F2(p, x, a, b) + F2(p, x, a, b - h)) / (2 * h * h);
  const double g12 = (F2(p, x, a + h, b + h) - F2(p, x, a + h, b - h) - F2(p, x, a - h, b + h) +
                      F2(p, x, a - h, b - h)) / (8 * h * h);
  CHECK(g.g11 == doctest::Approx(g11).epsilon(1e-6));
  CHECK(g.g22 == doctest::Approx(g22).epsilon(1e-6));
  CHECK(g.g12 == doctest::Approx(g12).epsilon(1e-6));
  // g_y(y, y) = F(y)^2
  const double F = eval_F(p, x, {a, b});
  CHECK(g.quad({a, b}, {a, b}) == doctest::Approx(F * F).epsilon(1e-13));
  CHECK(cos_F(p, x, {a, b}, {a, b}) == doctest::Approx(1.0));
}

TEST_CASE("errors") {
  const Profile p = make_paraboloid(1.0);
  CHECK_THROWS_AS(eval_F(p, {1.0, 0.0}, {0.0, 0.0}), Error);
  CHECK_THROWS_AS(fundamental_tensor(p, {0.0, 0.0}, {1.0, 0.0}), Error);
  // mu m >= 1: the wind is too strong
  const Profile strong = Profile::from_expressions("sin(r)", std::nullopt, std::nullopt, 2.0, 3.0);
  try {
    navigation_transform(strong, std::numbers::pi / 2);
    FAIL("expected metric_degenerate");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::metric_degenerate);
  }
}
