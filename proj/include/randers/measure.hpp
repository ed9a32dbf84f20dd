#pragma once

#include <cstddef>
#include <vector>

#include "randers/geodesics.hpp"
#include "randers/profile.hpp"

namespace randers {

/// Residuals of the Riemannian and Finslerian Clairaut relations along an
/// F-geodesic and its h pre-image. Angles are h-angles with the meridian.
struct ClairautReport {
  double nu = 0.0;
  double max_h_residual = 0.0;         // |m sin(phi) - nu|
  double max_F1_residual = 0.0;        // |sqrt(1+2 mu nu+mu^2 m^2) cos(psi-phi) - (1+mu nu)|
  double max_F2_residual = 0.0;        // |m sin(psi) - (nu+mu m^2)/sqrt(1+2 mu nu+mu^2 m^2)|
  double max_momentum_residual = 0.0;  // |p2 - nu/(1+mu nu)|
  double max_inner_residual = 0.0;     // |h(gamma', P') - (1+mu nu)|
  std::size_t samples = 0;
};

/// Integral of F(c') over the dense output of the curve (5-point
/// Gauss-Legendre on every sample interval).
double f_length(const Profile& p, const GeodesicPath& curve);

/// Same quadrature for the background metric h.
double h_length(const Profile& p, const GeodesicPath& curve);

/// Parallel {r = r0} traced as (r0, theta0 + rate s), s in [0, s_end].
GeodesicPath parallel_curve(const Profile& p, double r0, double theta0, double rate,
                            double s_end);

/// Closed-loop lengths of the parallel through r0 (one full turn).
struct ParallelLengths {
  double r0 = 0.0;
  double m0 = 0.0;
  double L_plus = 0.0;   // along the wind, quadrature
  double L_h = 0.0;      // h-length, quadrature
  double L_minus = 0.0;  // against the wind, quadrature
  double loop_plus_closed = 0.0;        // 2 pi m / (1 + mu m)
  double length_eq_plus = 0.0;          // 2 pi mu m / (1 + mu m): rate mu m/(1+mu m) at s = 2 pi
  double length_eq_minus = 0.0;         // 2 pi mu m / (1 - mu m)
  double corollary_plus = 0.0;          // pi m / (1 + mu m)
  double corollary_minus = 0.0;         // pi m / (1 - mu m)
  double ratio_plus = 0.0;              // L_plus / corollary_plus
  double ratio_minus = 0.0;             // L_minus / corollary_minus
  bool corollary_consistent = false;    // ratios equal 1 within 1e-9
};
ParallelLengths parallel_lengths(const Profile& p, double r0);

/// Two travellers leave (r0, 0) along the parallel with velocities +W and
/// -W (flow-time parameter s) and meet after total parameter 2 pi with equal
/// F-lengths.
struct MeetingPoint {
  double s1 = 0.0, s2 = 0.0, common_length = 0.0;  // from the equal-length solve
  double closed_s1 = 0.0, closed_s2 = 0.0, closed_length = 0.0;
  double rate_plus = 0.0, rate_minus = 0.0;  // F-length per unit parameter
  double max_deviation = 0.0;                // solve vs closed form
};
MeetingPoint meeting_point(const Profile& p, double r0);

/// p2 = (1/2) dF^2/dy^2 = F (a22 y^2 / alpha + b2).
double momentum_p2(const Profile& p, const GeodesicState& state);

/// Evaluates all Clairaut-type relations at every sample of an F-path
/// produced by `twist`; the h pre-image is recovered by removing the wind.
ClairautReport clairaut_verify(const Profile& p, const GeodesicPath& pathF);

/// d_F(p, q) = d_h(p, q) = r(q).
double distance_from_vertex(const Profile& p, const SurfacePoint& q);

struct VertexShot {
  double heading = 0.0;           // theta at which the twisted meridian leaves p
  double parameter_length = 0.0;  // parameter at which r reaches r(target)
  double f_length = 0.0;          // quadrature of F along the shot
  double miss = 0.0;              // angular miss at arrival
  int iterations = 0;
};
/// Shoots twisted meridians from the vertex at `target` (secant on the miss).
VertexShot shoot_from_vertex(const Profile& p, const SurfacePoint& target);

struct HDistance {
  double distance = 0.0;
  double nu = 0.0;     // Clairaut constant of the minimizer, seen from the lower point
  bool via_turning = false;
  int evaluations = 0;
};
/// Riemannian distance. Uses the Clairaut-constant sweep with quadrature
/// when m is increasing on [0, r_max]; otherwise falls back to ODE shooting.
HDistance distance_h(const Profile& p, const SurfacePoint& q1, const SurfacePoint& q2);

struct DistanceOptions {
  double tol = 1e-9;
  double t_max = 0.0;  // 0 selects 4 (r1 + r2 + pi max m)
};

struct DistanceReport {
  double distance = 0.0;
  double t_max = 0.0;
  double bracket_lo = 0.0, bracket_hi = 0.0;
  double residual = 0.0;  // g(T) at the returned T
  int iterations = 0;
  int dh_evaluations = 0;
};

/// Forward Finsler distance: the root T of d_h(q1, flow(-T, q2)) = T.
DistanceReport distance_F(const Profile& p, const SurfacePoint& q1,
                          const SurfacePoint& q2, const DistanceOptions& options = {});

/// Geodesic that reaches a target after parameter `length`.
struct ShotHit {
  double heading = 0.0;  // h-heading at the start
  double length = 0.0;   // parameter (= F-length for F-geodesics)
  double miss = 0.0;     // angular miss at arrival
  std::size_t crossing = 0;
};

struct FanOptions {
  std::size_t headings = 720;
  double max_length = 0.0;
  double wind = 0.0;  // 0: h-geodesics, mu: their F-twists
  double tol = 1e-10;
};

/// Uniform heading scan from q, bracketing sign changes of the angular miss
/// at successive crossings of the target's parallel, then bisection on the
/// heading. Hits are sorted by length.
std::vector<ShotHit> shoot_fan(const Profile& p, const SurfacePoint& q,
                               const SurfacePoint& target, const FanOptions& options);

/// max m over [0, r_max].
double max_warp(const Profile& p);

/// True when m' > 0 on [0, r_max] (sampled).
bool warp_increasing(const Profile& p);

}  // namespace randers
