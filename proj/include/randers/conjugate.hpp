#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "randers/geodesics.hpp"
#include "randers/measure.hpp"
#include "randers/profile.hpp"

namespace randers {

/// Scalar normal Jacobi field y'' + G(gamma(s)) y = 0.
struct JacobiState {
  double s = 0.0;
  double y = 0.0;
  double yp = 0.0;
};

struct JacobiResult {
  std::vector<JacobiState> samples;
  std::optional<double> first_zero;  // first sign change of y for s > 0
  std::size_t steps = 0;
};

struct JacobiOptions {
  double tol = 1e-12;
  double max_step = 0.05;
};

/// Integrates along a base geodesic given by its radius function r(s).
JacobiResult jacobi_integrate(const Profile& p, const std::function<double(double)>& radius,
                              double y0, double yp0, double upto,
                              const JacobiOptions& options = {});

/// Same, with the radius read from the dense output of an h-path.
JacobiResult jacobi_integrate(const Profile& p, const GeodesicPath& base, double y0,
                              double yp0, double upto, const JacobiOptions& options = {});

/// Radius along tau_q: the meridian from q through the vertex, continued
/// along the opposite meridian, r(s) = |rho - s|.
std::function<double(double)> tau_radius(double rho);

/// Point tau_q(s) in polar coordinates.
SurfacePoint tau_point(const SurfacePoint& q, double s);

/// First conjugate parameter c along tau_q (zero of the Jacobi field with
/// y(0) = 0, y'(0) = 1). Requires a von Mangoldt profile and q != p.
double first_conjugate(const Profile& p, const SurfacePoint& q,
                       const JacobiOptions& options = {});

struct CutSample {
  double s = 0.0;       // parameter along tau_q
  double r = 0.0;
  double theta = 0.0;
  double travel = 0.0;  // wind time: d_h(q, tau_q(s)) for the cut locus, s for the naive map
};

/// F-cut locus of q. The forward F-ball of radius T is the wind flow (time
/// T) of the h-ball of radius T, so the cut point over tau_q(s) is
/// flow(d_h(q, tau_q(s)), tau_q(s)). `twisted_samples` holds the curve
/// flow(s, tau_q(s)), which agrees with the cut locus only at s = c.
struct CutArc {
  SurfacePoint q;
  double rho = 0.0;
  double c = 0.0;
  double mu = 0.0;
  std::vector<CutSample> samples;
  std::vector<CutSample> twisted_samples;
};

CutArc cut_locus(const Profile& p, const SurfacePoint& q, std::optional<double> s_export_max = {},
                 std::size_t n_samples = 41);

/// Point of the cut locus over tau_q(s), s >= c.
SurfacePoint cut_point(const Profile& p, const SurfacePoint& q, double s);

struct CutPointCheck {
  SurfacePoint y;
  double distance = 0.0;            // d_F(q, y)
  std::vector<ShotHit> minimizers;  // F-geodesics of length d_F(q, y) reaching y
  std::vector<ShotHit> hits;        // every F-geodesic from the fan reaching y
  double length_gap = 0.0;          // max |L_i - L_j| among minimizers
  std::size_t expected = 2;
  bool passed = false;
};

/// Shoots F-geodesics from q (uniform heading scan, then root refinement on
/// the angular miss) and keeps those whose length matches d_F(q, y).
CutPointCheck verify_cut_point(const Profile& p, const SurfacePoint& q,
                               const SurfacePoint& y, std::size_t expected = 2,
                               double tol = 1e-6, std::size_t headings = 720);

struct PoleCertificate {
  double r_max = 0.0;
  double mu = 0.0;
  double lower_bound = 0.0;      // mu^2 (r_max - 1) / (4 pi^2)
  double integral = 0.0;         // quadrature of L_h^-2 over [1, r_max]
  double jacobi_max_deviation = 0.0;  // |y(s) - m(s)| along a meridian from p
  double jacobi_min_value = 0.0;      // min y(s) on (0, r_max]
  bool certified = false;
};

PoleCertificate certify_pole(const Profile& p, std::optional<double> r_max = {});

/// F-side estimate of the first conjugate parameter along the twisted
/// meridian through q: neighbouring Finsler-spray geodesics leaving q at
/// h-headings pi +- delta meet again at s(delta) = c + O(delta^2);
/// Richardson extrapolation over delta, delta/2, delta/4.
struct SpreadConjugate {
  double c_extrapolated = 0.0;
  std::vector<double> deltas;
  std::vector<double> meeting;  // s(delta)
};
SpreadConjugate spread_conjugate(const Profile& p, const SurfacePoint& q, double delta = 0.04);

}  // namespace randers
