#include "randers/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "randers/error.hpp"
#include "randers/ode.hpp"
#include "randers/quadrature.hpp"

namespace randers {

namespace {

constexpr double kPi = std::numbers::pi;

PathSample make_sample(const Profile& p, double s, const GeodesicState& st) {
  PathSample out{s, st, 0.0, 0.0};
  if (st.r > 0.0 && st.dtheta != 0.0) {
    const double m = p.m(st.r), m1 = p.m1(st.r);
    out.ddr = m * m1 * st.dtheta * st.dtheta;
    out.ddtheta = -2.0 * (m1 / m) * st.dr * st.dtheta;
  }
  return out;
}

GeodesicPath meridian_path(const Profile& p, const GeodesicState& start,
                           double length, double max_step) {
  GeodesicPath path;
  path.kind = PathKind::meridian;
  path.nu = 0.0;
  path.quality.tol = 0.0;
  const double dir = start.r == 0.0 ? 1.0 : (start.dr >= 0.0 ? 1.0 : -1.0);
  const double r0 = start.r;
  const double r_max = p.r_max();

  auto state_at = [&](double s) -> GeodesicState {
    if (dir > 0.0) return {r0 + s, start.theta, 1.0, 0.0};
    if (s < r0) return {r0 - s, start.theta, -1.0, 0.0};
    return {s - r0, start.theta + kPi, 1.0, 0.0};
  };

  // Parameter at which r reaches r_max, if within the requested length.
  double s_stop = length;
  const double s_exit = dir > 0.0 ? r_max - r0 : r0 + r_max;
  if (s_exit < length) {
    s_stop = s_exit;
    path.exited_domain = true;
  }

  std::vector<double> params;
  const auto n = static_cast<std::size_t>(std::ceil(s_stop / max_step));
  for (std::size_t k = 0; k <= n; ++k)
    params.push_back(std::min(s_stop, static_cast<double>(k) * max_step));
  if (dir < 0.0 && r0 > 0.0 && r0 < s_stop) {
    params.push_back(r0);
    path.vertex_s = r0;
  }
  std::sort(params.begin(), params.end());
  params.erase(std::unique(params.begin(), params.end()), params.end());
  for (double s : params) path.samples.push_back(make_sample(p, s, state_at(s)));
  return path;
}

}  // namespace

GeodesicState GeodesicPath::at(double s) const {
  if (samples.empty())
    throw Error(ErrorKind::invalid_parameter, "empty path");
  const double slack = 1e-12 * std::max(1.0, std::abs(s_end()));
  if (s < s_begin() - slack || s > s_end() + slack)
    throw Error(ErrorKind::invalid_parameter, "parameter outside the sampled range");
  s = std::clamp(s, s_begin(), s_end());
  if (samples.size() == 1) return samples.front().state;
  auto it = std::upper_bound(samples.begin(), samples.end(), s,
                             [](double v, const PathSample& ps) { return v < ps.s; });
  if (it == samples.end()) --it;
  if (it == samples.begin()) ++it;
  const PathSample& a = *(it - 1);
  const PathSample& b = *it;
  if (vertex_s && b.s == *vertex_s) {
    // Incoming meridian arc: linear in s, extrapolate from the left sample.
    const double ds = s - a.s;
    return {a.state.r + ds * a.state.dr, a.state.theta + ds * a.state.dtheta,
            a.state.dr, a.state.dtheta};
  }
  GeodesicState out;
  out.r = ode::hermite(a.s, b.s, a.state.r, b.state.r, a.state.dr, b.state.dr, s);
  out.theta = ode::hermite(a.s, b.s, a.state.theta, b.state.theta, a.state.dtheta,
                           b.state.dtheta, s);
  out.dr = ode::hermite(a.s, b.s, a.state.dr, b.state.dr, a.ddr, b.ddr, s);
  out.dtheta = ode::hermite(a.s, b.s, a.state.dtheta, b.state.dtheta, a.ddtheta,
                            b.ddtheta, s);
  return out;
}

double default_max_step(const Profile& p) {
  return p.mu() > 0.0 ? std::min(0.1, 0.1 / p.mu()) : 0.1;
}

GeodesicState h_unit_state(const Profile& p, const SurfacePoint& q, double heading) {
  if (q.r <= 0.0) return {0.0, q.theta, 1.0, 0.0};
  const double m = p.m(q.r);
  // Headings k pi give exact meridians rather than sin(pi) ~ 1e-16.
  if (std::remainder(heading, std::numbers::pi) == 0.0)
    return {q.r, q.theta, std::cos(heading) > 0.0 ? 1.0 : -1.0, 0.0};
  return {q.r, q.theta, std::cos(heading), std::sin(heading) / m};
}

Tangent f_unit_tangent(const Profile& p, const SurfacePoint& q, double heading) {
  const GeodesicState h = h_unit_state(p, q, heading);
  return {h.dr, h.dtheta + p.mu()};
}

double clairaut_constant(const Profile& p, const GeodesicState& s) {
  const double m = p.m(s.r);
  return m * m * s.dtheta;
}

GeodesicPath integrate_h(const Profile& p, const GeodesicState& start, double length,
                         const IntegrateOptions& options) {
  if (!(length >= 0.0))
    throw Error(ErrorKind::invalid_parameter, "integration length must be >= 0");
  if (!(start.r >= 0.0))
    throw Error(ErrorKind::invalid_parameter, "start radius must be >= 0");
  const double max_step =
      options.max_step > 0.0 ? options.max_step : default_max_step(p);

  if (start.r == 0.0) {
    if (std::abs(start.dr - 1.0) > 1e-10)
      throw Error(ErrorKind::invalid_parameter,
                  "geodesics from the vertex must be radial with unit speed");
    return meridian_path(p, start, length, max_step);
  }
  const double m0 = p.m(start.r);
  const double speed_sq = start.dr * start.dr + m0 * m0 * start.dtheta * start.dtheta;
  if (std::abs(speed_sq - 1.0) > 1e-10)
    throw Error(ErrorKind::invalid_parameter,
                "start state is not h-unit speed (|v|^2 = " + std::to_string(speed_sq) +
                    ")");
  if (start.dtheta == 0.0) return meridian_path(p, start, length, max_step);

  GeodesicPath path;
  path.tag = MetricTag::h;
  path.kind = PathKind::generic;
  path.nu = m0 * m0 * start.dtheta;
  path.quality.tol = options.tol;
  if (start.dr == 0.0 && p.m1(start.r) == 0.0) path.kind = PathKind::parallel;

  using V = ode::Vec<4>;
  auto rhs = [&p](double, const V& y) -> V {
    const double m = p.m(y[0]), m1 = p.m1(y[0]);
    return {y[2], y[3], m * m1 * y[3] * y[3], -2.0 * (m1 / m) * y[2] * y[3]};
  };
  const ode::Tolerance tol{options.tol, options.tol};

  double s = 0.0;
  V y{start.r, start.theta, start.dr, start.dtheta};
  V k1 = rhs(s, y);
  path.samples.push_back(make_sample(p, s, start));
  double h = std::min(max_step, 1e-2);

  while (s < length) {
    const bool last = h >= length - s;
    const double step = last ? length - s : h;
    const auto trial = ode::dopri5_trial<4>(rhs, s, y, k1, step, tol);
    const bool finite = std::isfinite(trial.error) && trial.y[0] > 0.0 &&
                        std::isfinite(trial.y[1]) && std::isfinite(trial.y[3]);
    if (!finite || trial.error > 1.0) {
      ++path.quality.rejected_steps;
      h = finite ? ode::next_step(step, trial.error) : 0.25 * step;
      if (h < 1e-14 * std::max(1.0, s))
        throw Error(ErrorKind::numerical_blowup,
                    "step size underflow near r=" + std::to_string(y[0]) +
                        " (geodesic with nonzero Clairaut constant approached the vertex)");
      continue;
    }
    ++path.quality.accepted_steps;
    s = last ? length : s + step;
    y = trial.y;
    const double m = p.m(y[0]);
    const double sp = y[2] * y[2] + m * m * y[3] * y[3];
    path.quality.max_unit_drift = std::max(path.quality.max_unit_drift, std::abs(sp - 1.0));
    const double scale = 1.0 / std::sqrt(sp);
    y[2] *= scale;
    y[3] *= scale;
    path.quality.max_clairaut_drift =
        std::max(path.quality.max_clairaut_drift, std::abs(m * m * y[3] - path.nu));
    if (y[0] > p.r_max()) {
      path.exited_domain = true;
      break;
    }
    k1 = rhs(s, y);
    path.samples.push_back({s, {y[0], y[1], y[2], y[3]}, k1[2], k1[3]});
    h = std::min(max_step, ode::next_step(step, trial.error));
  }
  return path;
}

GeodesicState exact_state(const Profile& p, const GeodesicPath& path, double s,
                          const IntegrateOptions& options) {
  if (path.kind != PathKind::generic || path.samples.size() < 2) return path.at(s);
  auto it = std::upper_bound(path.samples.begin(), path.samples.end(), s,
                             [](double v, const PathSample& ps) { return v < ps.s; });
  if (it == path.samples.begin()) return path.at(s);
  const PathSample& a = *(it - 1);
  if (s == a.s) return a.state;
  if (it == path.samples.end() && s > a.s + 1e-12 * std::max(1.0, s))
    throw Error(ErrorKind::invalid_parameter, "parameter outside the sampled range");
  // F-paths are stored twisted; undo the wind for the local h-integration.
  const double mu = path.tag == MetricTag::F ? path.twist_mu : 0.0;
  const double s0 = path.s_begin();
  GeodesicState h = a.state;
  h.theta -= mu * (a.s - s0);
  h.dtheta -= mu;
  const GeodesicPath piece = integrate_h(p, h, s - a.s, options);
  GeodesicState out = piece.samples.back().state;
  out.theta += mu * (s - s0);
  out.dtheta += mu;
  return out;
}

GeodesicPath twist(const GeodesicPath& path, double mu) {
  if (path.tag != MetricTag::h)
    throw Error(ErrorKind::invalid_parameter, "twist expects an h-geodesic");
  GeodesicPath out = path;
  out.tag = MetricTag::F;
  out.twist_mu = mu;
  if (path.kind == PathKind::meridian) out.kind = PathKind::twisted_meridian;
  const double s0 = path.samples.empty() ? 0.0 : path.s_begin();
  for (PathSample& ps : out.samples) {
    ps.state.theta += mu * (ps.s - s0);
    ps.state.dtheta += mu;
  }
  return out;
}

GeodesicPath integrate_F(const Profile& p, const SurfacePoint& q, const Tangent& yF,
                         double length, const IntegrateOptions& options) {
  const double mu = p.mu();
  if (q.r <= 0.0) {
    if (std::abs(yF.y1 - 1.0) > 1e-10)
      throw Error(ErrorKind::invalid_parameter,
                  "F-geodesics from the vertex leave radially with y1 = 1");
    return twist(integrate_h(p, {0.0, q.theta, 1.0, 0.0}, length, options), mu);
  }
  const double F = eval_F(p, q, yF);
  if (std::abs(F - 1.0) > 1e-10)
    throw Error(ErrorKind::invalid_parameter,
                "initial vector is not F-unit (F = " + std::to_string(F) + ")");
  GeodesicState h{q.r, q.theta, yF.y1, yF.y2 - mu};
  const double m = p.m(q.r);
  const double speed_sq = h.dr * h.dr + m * m * h.dtheta * h.dtheta;
  if (std::abs(speed_sq - 1.0) > 1e-8)
    throw Error(ErrorKind::inconsistent_input,
                "wind subtraction did not give an h-unit vector");
  // Absorb the admissible round-off so integrate_h sees an exact unit vector.
  const double scale = 1.0 / std::sqrt(speed_sq);
  h.dr *= scale;
  h.dtheta *= scale;
  if (std::abs(h.dtheta) * m < 1e-15) h.dtheta = 0.0;
  return twist(integrate_h(p, h, length, options), mu);
}

GeodesicPath twisted_meridian(const Profile& p, const SurfacePoint& q, double length,
                              bool outward, const IntegrateOptions& options) {
  const GeodesicState h{q.r, q.theta, outward ? 1.0 : -1.0, 0.0};
  return twist(integrate_h(p, h, length, options), p.mu());
}

QuadratureSegment quadrature_segment(const Profile& p, double ra, double rb, double nu,
                                     int sign) {
  if (sign != 1 && sign != -1)
    throw Error(ErrorKind::invalid_parameter, "sign must be +1 or -1");
  if (!(ra >= 0.0) || !(rb >= 0.0))
    throw Error(ErrorKind::invalid_parameter, "radii must be >= 0");
  const double mu = p.mu();
  QuadratureSegment out;
  if (nu == 0.0) {
    out.delta_s = sign * (rb - ra);
    out.delta_P2 = mu * out.delta_s;
    return out;
  }
  if (ra == rb) return out;

  const double an = std::abs(nu);
  const double orient = rb > ra ? 1.0 : -1.0;
  double lo = std::min(ra, rb), hi = std::max(ra, rb);

  // Endpoint on (or within round-off of) a turning point: move it to the side
  // where m >= |nu| so the integrand stays real.
  const double slack = 1e-9 * std::max(1.0, an);
  auto settle = [&](double& end, double toward) {
    const double gap = p.m(end) - an;
    if (gap >= 0.0) return;
    if (gap < -slack)
      throw Error(ErrorKind::invalid_bracket,
                  "m(r) < |nu| at segment endpoint r=" + std::to_string(end));
    double a = end, b = toward;
    for (int i = 0; i < 200 && std::abs(b - a) > 0.0; ++i) {
      const double mid = 0.5 * (a + b);
      if (mid == a || mid == b) break;
      if (p.m(mid) - an >= 0.0)
        b = mid;
      else
        a = mid;
    }
    end = b;
  };
  const double mid0 = 0.5 * (lo + hi);
  settle(lo, mid0);
  settle(hi, mid0);
  for (int i = 1; i < 64; ++i) {
    const double r = lo + (hi - lo) * i / 64.0;
    if (!(p.m(r) > an))
      throw Error(ErrorKind::invalid_bracket,
                  "m(r) <= |nu| inside the segment at r=" + std::to_string(r));
  }

  // Integrand pieces at r = end + dir*u^2, including the Jacobian 2u.
  struct Pieces {
    double xi, eta;
  };
  // m(r) - |nu| near an endpoint cancels catastrophically; there it is
  // rebuilt as gap(end) + integral of m' over the short offset.
  // Gaps at rounding level are exact turning points. The length depends on
  // sqrt(gap) there, so a 1e-16 residue would cost 1e-8 in delta_s.
  const double floor_gap = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, an);
  auto base_gap = [&](double end) {
    const double g = p.m(end) - an;
    return g <= floor_gap ? 0.0 : g;
  };
  const double gap_lo = base_gap(lo);
  const double gap_hi = base_gap(hi);
  const double near = 1e-2 * std::max(1.0, hi);
  auto pieces = [&](double end, double dir, double u) -> Pieces {
    const double d = u * u;
    const double r = end + dir * d;
    const double m = p.m(r);
    double gap;
    if (d < near) {
      const double base = dir > 0.0 ? gap_lo : gap_hi;
      // Integrating over the offset keeps the interval length exactly d.
      gap = base + dir * quad::gauss_legendre5(
                             [&](double t) { return p.m1(end + dir * t); }, 0.0, d);
    } else {
      gap = m - an;
    }
    if (!(gap > 0.0)) gap = std::abs(p.m1(end)) * d;  // Taylor fallback at u -> 0
    const double root = std::sqrt(gap * (m + an));
    if (root == 0.0) return {0.0, 0.0};
    return {2.0 * u * nu / (m * root), 2.0 * u * m / root};
  };
  const double mid = 0.5 * (lo + hi);
  const double ul = std::sqrt(mid - lo), uh = std::sqrt(hi - mid);
  // A near-turning endpoint leaves a layer of width sqrt(gap/|m'|) in u.
  // Geometric breakpoints from that scale keep every piece smooth.
  auto breakpoints = [&](double gap, double end, double umax) {
    std::vector<double> pts{0.0};
    const double slope = std::abs(p.m1(end));
    if (gap > 0.0 && slope > 0.0) {
      for (double u = std::sqrt(gap / slope); u < 0.25 * umax; u *= 4.0)
        pts.push_back(u);
    }
    pts.push_back(umax);
    return pts;
  };
  const std::vector<double> bl = breakpoints(gap_lo, lo, ul);
  const std::vector<double> bh = breakpoints(gap_hi, hi, uh);
  auto integral = [&](bool want_xi) {
    auto fl = [&](double u) {
      const Pieces pc = pieces(lo, 1.0, u);
      return want_xi ? pc.xi : pc.eta;
    };
    auto fh = [&](double u) {
      const Pieces pc = pieces(hi, -1.0, u);
      return want_xi ? pc.xi : pc.eta;
    };
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < bl.size(); ++i) total += quad::integrate(fl, bl[i], bl[i + 1]);
    for (std::size_t i = 0; i + 1 < bh.size(); ++i) total += quad::integrate(fh, bh[i], bh[i + 1]);
    return total;
  };
  out.delta_theta = sign * orient * integral(true);
  out.delta_s = sign * orient * integral(false);
  out.delta_P2 = out.delta_theta + mu * out.delta_s;
  return out;
}

std::vector<TurningPoint> turning_points(const Profile& p, double nu,
                                         std::span<const double> grid) {
  std::vector<TurningPoint> out;
  if (nu == 0.0) return out;
  const double mu = p.mu();
  if (mu > 0.0 && !(std::abs(nu) < 1.0 / mu))
    throw Error(ErrorKind::invalid_parameter, "|nu| must be < 1/mu");
  const double an = std::abs(nu);
  auto f = [&](double r) { return p.m(r) - an; };
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double fa = f(grid[i - 1]), fb = f(grid[i]);
    // A root sitting on a grid node is reported once, from the interval it starts.
    if (fa == 0.0 || fb == 0.0 || (fa < 0.0) == (fb < 0.0)) {
      if (fa == 0.0) out.push_back({grid[i - 1], p.m1(grid[i - 1]) == 0.0});
      continue;
    }
    const double r = quad::bisect(f, grid[i - 1], grid[i], 1e-12);
    out.push_back({r, std::abs(p.m1(r)) < 1e-12});
  }
  return out;
}

double f_unit_residual(const Profile& p, const GeodesicPath& path) {
  double worst = 0.0;
  for (const PathSample& ps : path.samples) {
    const double F = eval_F(p, ps.state.point(), ps.state.velocity());
    worst = std::max(worst, std::abs(F - 1.0));
  }
  return worst;
}

namespace {

struct P2 {
  double x, y;
};

P2 chart(const GeodesicState& st) {
  return {st.r * std::cos(st.theta), st.r * std::sin(st.theta)};
}

double orient(P2 a, P2 b, P2 c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

}  // namespace

GeodesicPath integrate_F_spray(const Profile& p, const SurfacePoint& q, const Tangent& y,
                               double length, const IntegrateOptions& options,
                               const std::vector<double>& stops) {
  if (!(q.r > 0.0))
    throw Error(ErrorKind::vertex_singular, "the spray is integrated away from the vertex");
  if (y.y1 == 0.0 && y.y2 == 0.0)
    throw Error(ErrorKind::invalid_parameter, "zero initial velocity");
  const double mu = p.mu();
  const double max_step =
      options.max_step > 0.0 ? options.max_step : default_max_step(p);

  using V = ode::Vec<4>;
  auto rhs = [&p, mu](double, const V& x) -> V {
    const double r = x[0], y1 = x[2], y2 = x[3];
    const double m = p.m(r), m1 = p.m1(r);
    const double lam = 1.0 - mu * mu * m * m;
    const double dlam = -2.0 * mu * mu * m * m1;
    const double a11 = 1.0 / lam, a22 = m * m / (lam * lam), b2 = -mu * m * m / lam;
    const double da11 = -dlam / (lam * lam);
    const double da22 = 2.0 * m * m1 / (lam * lam) - 2.0 * m * m * dlam / (lam * lam * lam);
    const double db2 = -mu * (2.0 * m * m1 / lam - m * m * dlam / (lam * lam));
    const double alpha = std::sqrt(a11 * y1 * y1 + a22 * y2 * y2);
    const double F = alpha + b2 * y2;
    const double alpha_r = (da11 * y1 * y1 + da22 * y2 * y2) / (2.0 * alpha);
    const double F_r = alpha_r + db2 * y2;
    const double F_y1 = a11 * y1 / alpha, F_y2 = a22 * y2 / alpha + b2;
    const double F_ry1 = da11 * y1 / alpha - a11 * y1 * alpha_r / (alpha * alpha);
    const double F_ry2 = da22 * y2 / alpha - a22 * y2 * alpha_r / (alpha * alpha) + db2;
    const double L_r = F * F_r;
    const double L_y1r = F_r * F_y1 + F * F_ry1;
    const double L_y2r = F_r * F_y2 + F * F_ry2;
    // g_ij = (F/alpha)(a_ij - l_i l_j) + (l_i + b_i)(l_j + b_j)
    const double l1 = a11 * y1 / alpha, l2 = a22 * y2 / alpha;
    const double k = F / alpha;
    const double g11 = k * (a11 - l1 * l1) + l1 * l1;
    const double g12 = -k * l1 * l2 + l1 * (l2 + b2);
    const double g22 = k * (a22 - l2 * l2) + (l2 + b2) * (l2 + b2);
    const double rhs1 = L_r - L_y1r * y1;
    const double rhs2 = -L_y2r * y1;
    const double det = g11 * g22 - g12 * g12;
    return {y1, y2, (g22 * rhs1 - g12 * rhs2) / det, (g11 * rhs2 - g12 * rhs1) / det};
  };

  std::vector<double> marks;
  for (double t : stops)
    if (t > 0.0 && t < length) marks.push_back(t);
  marks.push_back(length);
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());

  GeodesicPath path;
  path.tag = MetricTag::F;
  path.kind = PathKind::generic;
  path.quality.tol = options.tol;
  const ode::Tolerance tol{options.tol, options.tol};
  double s = 0.0;
  V x{q.r, q.theta, y.y1, y.y2};
  V k1 = rhs(s, x);
  path.samples.push_back({s, {x[0], x[1], x[2], x[3]}, k1[2], k1[3]});
  const double speed = eval_F(p, q, y);
  double h = std::min(max_step, 1e-2);
  std::size_t next = 0;

  while (next < marks.size()) {
    const double target = marks[next];
    const bool last = h >= target - s;
    const double step = last ? target - s : h;
    const auto trial = ode::dopri5_trial<4>(rhs, s, x, k1, step, tol);
    const bool finite = std::isfinite(trial.error) && trial.y[0] > 0.0;
    if (!finite || trial.error > 1.0) {
      ++path.quality.rejected_steps;
      h = finite ? ode::next_step(step, trial.error) : 0.25 * step;
      if (h < 1e-14 * std::max(1.0, s))
        throw Error(ErrorKind::numerical_blowup, "spray step size underflow");
      continue;
    }
    ++path.quality.accepted_steps;
    s = last ? target : s + step;
    if (last) ++next;
    x = trial.y;
    k1 = trial.dydt;
    if (x[0] > p.r_max()) {
      path.exited_domain = true;
      break;
    }
    const double F = eval_F(p, {x[0], x[1]}, {x[2], x[3]});
    path.quality.max_unit_drift = std::max(path.quality.max_unit_drift, std::abs(F - speed));
    path.samples.push_back({s, {x[0], x[1], x[2], x[3]}, k1[2], k1[3]});
    if (!last) h = std::min(max_step, ode::next_step(step, trial.error));
  }
  path.nu = 0.0;
  return path;
}

double f_geodesic_residual(const Profile& p, const GeodesicPath& path) {
  if (path.samples.size() < 3)
    throw Error(ErrorKind::invalid_parameter, "residual needs at least 3 samples");
  const GeodesicState& st = path.samples.front().state;
  if (st.r <= 0.0)
    throw Error(ErrorKind::vertex_singular, "residual path must start away from the vertex");
  const double s0 = path.s_begin();
  std::vector<double> stops;
  for (const PathSample& ps : path.samples) stops.push_back(ps.s - s0);
  IntegrateOptions io;
  io.tol = 1e-12;
  const GeodesicPath ref =
      integrate_F_spray(p, st.point(), st.velocity(), path.parameter_length(), io, stops);

  double worst = 0.0;
  std::size_t j = 0;
  for (const PathSample& ps : path.samples) {
    const double t = ps.s - s0;
    while (j + 1 < ref.samples.size() && ref.samples[j].s < t) ++j;
    if (std::abs(ref.samples[j].s - t) > 1e-12 * std::max(1.0, t)) break;  // reference left the domain
    const P2 a = chart(ps.state), b = chart(ref.samples[j].state);
    worst = std::max(worst, std::hypot(a.x - b.x, a.y - b.y));
  }
  return worst / path.parameter_length();
}

std::size_t count_self_intersections(const GeodesicPath& path) {
  std::vector<P2> pts;
  pts.reserve(path.samples.size());
  for (const PathSample& ps : path.samples) pts.push_back(chart(ps.state));
  std::size_t count = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    for (std::size_t j = i + 2; j + 1 < pts.size(); ++j) {
      const double d1 = orient(pts[i], pts[i + 1], pts[j]);
      const double d2 = orient(pts[i], pts[i + 1], pts[j + 1]);
      const double d3 = orient(pts[j], pts[j + 1], pts[i]);
      const double d4 = orient(pts[j], pts[j + 1], pts[i + 1]);
      if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
          ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        ++count;
    }
  }
  return count;
}

}  // namespace randers
