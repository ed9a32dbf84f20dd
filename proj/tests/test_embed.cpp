#include <doctest.h>

#include <cmath>
#include <numbers>

#include "randers/embed.hpp"
#include "randers/error.hpp"
#include "randers/measure.hpp"

using namespace randers;

namespace {
constexpr double kPi = std::numbers::pi;

// Zermelo closed form with the rotational wind W = (-mu y, mu x, 0) on R^3.
double zermelo_F(double mu, const MinkowskiPoint& x, const Vec3& v) {
  const double lam = 1.0 - mu * mu * (x.x * x.x + x.y * x.y);
  const double wv = -mu * x.y * v[0] + mu * x.x * v[1];
  const double vv = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
  return (std::sqrt(lam * vv + wv * wv) - wv) / lam;
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
}  // namespace

TEST_CASE("F~ agrees with the Zermelo closed form") {
  for (double mu : {0.3, 1.0}) {
    for (const MinkowskiPoint& x : {MinkowskiPoint{0.1, -0.2, 3.0}, MinkowskiPoint{0.5, 0.4, -1.0}}) {
      for (const Vec3& v : {Vec3{1, 0, 0}, Vec3{0.3, -2, 0.5}, Vec3{0, 0, 1}, Vec3{-1, 1, 1}}) {
        CHECK(eval_F_tilde(mu, x, v) == doctest::Approx(zermelo_F(mu, x, v)).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("F~ is only defined inside the cylinder") {
  CHECK_THROWS_AS(minkowski_randers(1.0, {1.0, 0.0, 0.0}), Error);
  CHECK_THROWS_AS(minkowski_randers(2.0, {0.3, 0.5, 0.0}), Error);
  CHECK_NOTHROW(minkowski_randers(1.0, {0.6, 0.7, 10.0}));
}

TEST_CASE("embedded points of the paraboloid") {
  const Embedding e(make_paraboloid(1.0));
  CHECK(e.fully_embeddable());
  const MinkowskiPoint apex = e.point({0.0, 1.3});
  CHECK(apex.x == 0.0);
  CHECK(apex.y == 0.0);
  CHECK(apex.z == 0.0);

  // Every embedded point stays inside the cylinder of radius 1/mu.
  for (double r : {0.1, 1.0, 5.0, 19.9}) {
    const MinkowskiPoint x = e.point({r, 0.7});
    CHECK(x.x * x.x + x.y * x.y < 1.0);
    CHECK(std::hypot(x.x, x.y) == doctest::Approx(e.profile().m(r)).epsilon(1e-14));
  }

  // The meridian is parametrized by arclength: |d phi/dr| = 1.
  for (double r : {0.2, 1.0, 4.0}) {
    const Vec3 d = e.pushforward({r, 0.4}, {1.0, 0.0});
    CHECK(std::sqrt(dot(d, d)) == doctest::Approx(1.0).epsilon(1e-12));
    const double h = 1e-5;
    const double fd = (e.z(r + h) - e.z(r - h)) / (2 * h);
    CHECK(fd == doctest::Approx(e.dz(r)).epsilon(1e-8));
  }
}

TEST_CASE("rotating by pi mirrors x and y") {
  const Embedding e(make_paraboloid(0.5));
  const MinkowskiPoint a = e.point({2.0, 0.3});
  const MinkowskiPoint b = e.point({2.0, 0.3 + kPi});
  CHECK(b.x == doctest::Approx(-a.x).epsilon(1e-14));
  CHECK(b.y == doctest::Approx(-a.y).epsilon(1e-14));
  CHECK(b.z == a.z);
}

TEST_CASE("F~ pulls back to F") {
  const Embedding e(make_paraboloid(1.0));
  const SurfacePoint q{1.0, 0.0};
  const MinkowskiPoint x = e.point(q);
  CHECK(eval_F_tilde(1.0, x, e.pushforward(q, {1.0, 0.0})) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(eval_F_tilde(1.0, x, e.pushforward(q, {0.0, 1.0})) ==
        doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-14));

  for (double mu : {0.3, 1.0}) {
    const PullbackReport rep = pullback_batch(Embedding(make_paraboloid(mu)), 1000, 7, 0.1, 5.0);
    CHECK(rep.samples == 1000);
    CHECK(rep.passed);
    CHECK(rep.max_residual < 1e-9);
  }
}

TEST_CASE("the height map z = r is not an isometry") {
  const Embedding e(make_paraboloid(1.0));
  const HeightMapCheck c = height_map_check(e, 1.0);
  // m' = 1/2^(3/2) at r = 1: (1 + 1/8) / (1/2) = 2.25, against a11 = 2.
  CHECK(c.a11 == doctest::Approx(2.0));
  CHECK(c.pulled_a11 == doctest::Approx(2.25));
  CHECK(c.arclength_a11 == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(c.pulled_a22 == doctest::Approx(c.a22));
  CHECK_FALSE(c.isometric);
}

TEST_CASE("embeddability is detected") {
  // m = r + r^3 has m' >= 1 everywhere past the vertex.
  const Profile steep = Profile::from_expressions("r + r^3", std::nullopt, std::nullopt, 0.01, 2.0);
  const Embedding e(steep);
  CHECK_FALSE(e.fully_embeddable());
  CHECK_THROWS_AS(e.point({1.0, 0.0}), Error);
  try {
    e.point({1.5, 0.0});
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::not_embeddable);
  }
}

TEST_CASE("mesh normals point away from the axis") {
  const Embedding e(make_paraboloid(1.0));
  const Mesh mesh = embed_mesh(e, 3.0, 12, 24);
  REQUIRE_FALSE(mesh.faces.empty());
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const Vec3 n = face_normal(mesh, f);
    Vec3 c{0, 0, 0};
    for (std::size_t v : mesh.faces[f])
      for (int k = 0; k < 3; ++k) c[k] += mesh.vertices[v][k] / 3.0;
    CHECK(n[0] * c[0] + n[1] * c[1] > 0.0);
  }
}

TEST_CASE("embedded F-geodesics keep their length") {
  const Profile p = make_paraboloid(1.0);
  const Embedding e(p);
  const GeodesicPath g = integrate_F(p, {1.0, 0.2}, f_unit_tangent(p, {1.0, 0.2}, 0.9), 3.0);
  CHECK(f_tilde_length(e, g) == doctest::Approx(f_length(p, g)).epsilon(1e-9));
  CHECK(f_tilde_length(e, g) == doctest::Approx(3.0).epsilon(1e-8));

  // A twisted meridian is a space curve, not a straight line.
  const GeodesicPath tm = twisted_meridian(p, {0.5, 0.0}, 2.0);
  CHECK(max_chord_deviation(embed_path(e, tm)) > 1e-2);
  CHECK(max_chord_deviation({{0, 0, 0}, {1, 1, 1}, {2, 2, 2}}) == doctest::Approx(0.0));
}
