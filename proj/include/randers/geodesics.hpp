#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "randers/profile.hpp"
#include "randers/zermelo.hpp"

namespace randers {

/// Phase-space point (r, theta, dr/ds, dtheta/ds).
struct GeodesicState {
  double r = 0.0;
  double theta = 0.0;
  double dr = 0.0;
  double dtheta = 0.0;

  SurfacePoint point() const { return {r, theta}; }
  Tangent velocity() const { return {dr, dtheta}; }
};

enum class MetricTag { h, F };
enum class PathKind { meridian, twisted_meridian, parallel, generic };

struct PathSample {
  double s = 0.0;
  GeodesicState state;
  double ddr = 0.0;  // second derivatives, used for dense velocity output
  double ddtheta = 0.0;
};

struct PathQuality {
  double tol = 0.0;
  double max_unit_drift = 0.0;      // |dr^2 + m^2 dtheta^2 - 1| before renormalization
  double max_clairaut_drift = 0.0;  // |m^2 dtheta - nu| after renormalization
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
};

/// Sampled curve with cubic Hermite dense output. Meridians through the
/// vertex carry `vertex_s`; theta jumps by pi there.
struct GeodesicPath {
  std::vector<PathSample> samples;
  double nu = 0.0;
  MetricTag tag = MetricTag::h;
  PathKind kind = PathKind::generic;
  double twist_mu = 0.0;  // wind applied by `twist`; 0 for h-paths
  std::optional<double> vertex_s;
  bool exited_domain = false;
  PathQuality quality;

  double s_begin() const { return samples.front().s; }
  double s_end() const { return samples.back().s; }
  double parameter_length() const { return s_end() - s_begin(); }
  GeodesicState at(double s) const;
};

struct IntegrateOptions {
  double tol = 1e-10;
  double max_step = 0.0;  // 0 selects min(0.1, 0.1/mu)
};

/// Default step cap min(0.1, 0.1/mu).
double default_max_step(const Profile& p);

/// Unit-speed h-state at q whose velocity makes the angle `heading` with
/// d/dr (positive towards +theta).
GeodesicState h_unit_state(const Profile& p, const SurfacePoint& q, double heading);

/// F-unit tangent at q corresponding to the h-heading: (h-unit vector) + W.
Tangent f_unit_tangent(const Profile& p, const SurfacePoint& q, double heading);

/// nu = m(r)^2 dtheta.
double clairaut_constant(const Profile& p, const GeodesicState& s);

/// Integrates the unit-speed h-geodesic equations
///   r'' = m m' theta'^2,  theta'' = -2 (m'/m) r' theta'
/// with an adaptive Dormand-Prince 4(5) scheme. Exact meridians are produced
/// analytically. Stops early (exited_domain) when r leaves [0, r_max].
GeodesicPath integrate_h(const Profile& p, const GeodesicState& start,
                         double length, const IntegrateOptions& options = {});

/// State at parameter s to integrator accuracy: re-integrates from the
/// nearest sample at or before s instead of using the cubic dense output.
GeodesicState exact_state(const Profile& p, const GeodesicPath& path, double s,
                          const IntegrateOptions& options = {});

/// (r, theta, r', theta') -> (r, theta + mu s, r', theta' + mu).
GeodesicPath twist(const GeodesicPath& path, double mu);

/// F-geodesic from q with F-unit initial velocity: subtracts the wind,
/// integrates the h-geodesic and twists it.
GeodesicPath integrate_F(const Profile& p, const SurfacePoint& q, const Tangent& yF,
                         double length, const IntegrateOptions& options = {});

/// Twisted meridian leaving q outward (heading 0) or inward (heading pi).
GeodesicPath twisted_meridian(const Profile& p, const SurfacePoint& q, double length,
                              bool outward = true, const IntegrateOptions& options = {});

struct QuadratureSegment {
  double delta_theta = 0.0;
  double delta_s = 0.0;
  double delta_P2 = 0.0;  // delta_theta + mu delta_s
};

/// Angle and arc length swept by an h-geodesic with Clairaut constant nu
/// between radii ra and rb (sign = sign of dr/ds). Turning-point endpoints
/// (m = |nu|) are handled by r = r_t + u^2.
QuadratureSegment quadrature_segment(const Profile& p, double ra, double rb,
                                     double nu, int sign);

struct TurningPoint {
  double r = 0.0;
  bool geodesic_parallel = false;  // m'(r) = 0: the geodesic is the parallel itself
};

/// Roots of m(r) = |nu| bracketed on the grid and refined to 1e-12.
std::vector<TurningPoint> turning_points(const Profile& p, double nu,
                                         std::span<const double> grid);

/// Integrates the Euler-Lagrange equations of F^2/2 directly,
///   g_ij(x, x') x''^j = dL/dx^i - (d^2 L / dy^i dr) r',
/// with analytic coefficient derivatives. Independent of the navigation
/// correspondence; used as an oracle. The speed F(x') is preserved, so any
/// nonzero initial velocity is accepted. Every parameter listed in `stops`
/// (within [0, length]) appears as a sample. r must stay positive.
GeodesicPath integrate_F_spray(const Profile& p, const SurfacePoint& q, const Tangent& y,
                               double length, const IntegrateOptions& options = {},
                               const std::vector<double>& stops = {});

/// Re-shoots an F-geodesic with the Finsler spray from the initial state of
/// `path` (same velocity, hence same parameter) and returns the largest
/// chart distance |(r cos theta, r sin theta) - reference| over the path
/// samples, divided by the parameter length.
double f_geodesic_residual(const Profile& p, const GeodesicPath& path);

/// Max |F(P, P') - 1| over the samples of an F-path.
double f_unit_residual(const Profile& p, const GeodesicPath& path);

/// Number of transverse self-intersections of the path polyline in the
/// chart (r cos theta, r sin theta).
std::size_t count_self_intersections(const GeodesicPath& path);

}  // namespace randers
