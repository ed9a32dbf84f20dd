#include <doctest.h>

#include <cmath>
#include <numbers>

#include "randers/conjugate.hpp"
#include "randers/error.hpp"

using namespace randers;

namespace {
constexpr double kPi = std::numbers::pi;

// Round sphere cap, G = 1: conjugate points sit at distance pi.
Profile sphere(double mu) {
  return Profile::from_expressions("sin(r)", std::nullopt, std::nullopt, mu, 3.0, "sphere");
}
}  // namespace

TEST_CASE("Jacobi fields with constant curvature") {
  const Profile s = sphere(0.3);
  const JacobiResult jr = jacobi_integrate(s, tau_radius(1.0), 0.0, 1.0, 3.5);
  REQUIRE(jr.first_zero.has_value());
  CHECK(*jr.first_zero == doctest::Approx(kPi).epsilon(1e-10));
  for (const JacobiState& js : jr.samples) CHECK(js.y == doctest::Approx(std::sin(js.s)).epsilon(1e-9));
  CHECK(first_conjugate(s, {1.0, 0.0}) == doctest::Approx(kPi).epsilon(1e-10));
  CHECK(first_conjugate(s, {0.4, 2.0}) == doctest::Approx(kPi).epsilon(1e-10));
}

TEST_CASE("the plane has no conjugate points") {
  const Profile plane = Profile::from_expressions("r", std::nullopt, std::nullopt, 0.01, 10.0);
  try {
    first_conjugate(plane, {1.0, 0.0});
    FAIL("expected horizon");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::horizon);
  }
}

TEST_CASE("Jacobi field along a meridian from the vertex is m") {
  const Profile p = make_paraboloid(1.0);
  const std::function<double(double)> radius = [](double s) { return s; };
  const JacobiResult jr = jacobi_integrate(p, radius, 0.0, 1.0, 20.0);
  CHECK_FALSE(jr.first_zero.has_value());
  for (const JacobiState& js : jr.samples) CHECK(std::abs(js.y - p.m(js.s)) < 1e-9);

  const PoleCertificate cert = certify_pole(p, 20.0);
  CHECK(cert.certified);
  CHECK(cert.lower_bound == doctest::Approx(19.0 / (4 * kPi * kPi)));
  // int_1^20 (r^2 + 1) / (4 pi^2 r^2) dr = (19 + 1 - 1/20) / (4 pi^2)
  CHECK(cert.integral == doctest::Approx((19.0 + 1.0 - 1.0 / 20.0) / (4 * kPi * kPi)).epsilon(1e-10));
  CHECK(cert.jacobi_max_deviation < 1e-9);
}

TEST_CASE("conjugate parameter on the paraboloid") {
  const Profile p = make_paraboloid(1.0);
  for (double rho : {0.5, 1.0, 2.0}) {
    const double c = first_conjugate(p, {rho, 0.0});
    CHECK(c > rho);
    // Neighbouring Finsler-spray geodesics meet at the same parameter: the
    // twist maps h-Jacobi fields to F-Jacobi fields.
    const SpreadConjugate sc = spread_conjugate(p, {rho, 0.0});
    CHECK(sc.c_extrapolated == doctest::Approx(c).epsilon(1e-8));
    CHECK(sc.meeting[0] > sc.meeting[1]);
  }
}

TEST_CASE("preconditions") {
  const Profile p = make_paraboloid(1.0);
  CHECK_THROWS_AS(first_conjugate(p, {0.0, 0.0}), Error);
  const Profile bump = Profile::from_expressions("r/(1+r^2)", std::nullopt, std::nullopt, 1.0, 10.0);
  CHECK_THROWS_AS(first_conjugate(bump, {1.0, 0.0}), Error);
}

TEST_CASE("cut locus of q = (1, 0)") {
  const Profile p = make_paraboloid(1.0);
  const SurfacePoint q{1.0, 0.0};
  const CutArc arc = cut_locus(p, q, 5.0, 9);
  REQUIRE(arc.samples.size() == 9);
  CHECK(arc.samples.front().s == doctest::Approx(arc.c));
  // At s = c the meridian is still minimizing, so both descriptions agree there.
  CHECK(arc.samples.front().travel == doctest::Approx(arc.c).epsilon(1e-9));
  CHECK(arc.samples.front().theta == doctest::Approx(arc.twisted_samples.front().theta).epsilon(1e-9));
  for (std::size_t i = 1; i < arc.samples.size(); ++i) {
    CHECK(arc.samples[i].travel < arc.samples[i].s);
    CHECK(arc.samples[i].r == doctest::Approx(arc.samples[i].s - 1.0));
  }

  const CutPointCheck on = verify_cut_point(p, q, cut_point(p, q, arc.c + 1.0), 2);
  CHECK(on.passed);
  REQUIRE(on.minimizers.size() == 2);
  CHECK(on.length_gap < 1e-8);
  CHECK(std::abs(on.minimizers[0].heading - on.minimizers[1].heading) > 0.1);

  // Points of the naive twisted curve beyond c are not cut points: the
  // distance there is shorter than the parameter.
  const CutSample& naive = arc.twisted_samples.back();
  const double d = distance_F(p, q, {naive.r, naive.theta}).distance;
  CHECK(d < naive.s - 1e-3);

  const CutPointCheck off = verify_cut_point(p, q, cut_point(p, q, 1.5), 1);
  CHECK(off.passed);
  CHECK(off.minimizers.size() == 1);
}

TEST_CASE("tau helpers") {
  const SurfacePoint q{2.0, 0.5};
  CHECK(tau_point(q, 1.0).r == doctest::Approx(1.0));
  CHECK(tau_point(q, 1.0).theta == doctest::Approx(0.5));
  CHECK(tau_point(q, 3.0).r == doctest::Approx(1.0));
  CHECK(tau_point(q, 3.0).theta == doctest::Approx(0.5 + kPi));
  CHECK(tau_radius(2.0)(3.5) == doctest::Approx(1.5));
}
