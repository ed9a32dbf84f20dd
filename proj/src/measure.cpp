#include "randers/measure.hpp"

#include <algorithm>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "randers/error.hpp"
#include "randers/quadrature.hpp"
#include "randers/zermelo.hpp"

namespace randers {

namespace {

constexpr double kPi = std::numbers::pi;

void check_point(const Profile& p, const SurfacePoint& q, const char* what) {
  if (!(q.r >= 0.0) || !(q.r <= p.r_max()) || !std::isfinite(q.theta))
    throw Error(ErrorKind::domain,
                std::string(what) + " must satisfy 0 <= r <= r_max (r = " +
                    std::to_string(q.r) + ")");
}

template <class F>
double curve_length(const GeodesicPath& curve, F&& norm) {
  if (curve.samples.size() < 2) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < curve.samples.size(); ++i) {
    const double a = curve.samples[i].s, b = curve.samples[i + 1].s;
    total += quad::gauss_legendre5([&](double s) { return norm(curve.at(s)); }, a, b);
  }
  return total;
}

// Truncates a path at parameter s_stop, ending on an interpolated sample.
GeodesicPath truncate(const GeodesicPath& path, double s_stop) {
  GeodesicPath out = path;
  out.samples.clear();
  for (const PathSample& ps : path.samples) {
    if (ps.s >= s_stop) break;
    out.samples.push_back(ps);
  }
  PathSample last{s_stop, path.at(s_stop), 0.0, 0.0};
  // Second derivatives for the final Hermite segment, by central difference.
  const double d = 1e-6 * std::max(1.0, s_stop);
  const double a = std::max(path.s_begin(), s_stop - d);
  const double b = std::min(path.s_end(), s_stop + d);
  if (b > a) {
    const GeodesicState sa = path.at(a), sb = path.at(b);
    last.ddr = (sb.dr - sa.dr) / (b - a);
    last.ddtheta = (sb.dtheta - sa.dtheta) / (b - a);
  }
  out.samples.push_back(last);
  if (out.vertex_s && *out.vertex_s > s_stop) out.vertex_s.reset();
  return out;
}

// Parameter in [a, b] where the path radius equals r_target: bisection on
// the dense output, then Newton steps on re-integrated states.
double radius_crossing(const Profile& p, const GeodesicPath& path, double a, double b,
                       double r_target, const IntegrateOptions& io = {}) {
  double s = quad::bisect([&](double t) { return path.at(t).r - r_target; }, a, b, 1e-14);
  if (path.kind != PathKind::generic) return s;
  for (int it = 0; it < 4; ++it) {
    const GeodesicState st = exact_state(p, path, s, io);
    if (std::abs(st.dr) < 1e-8) break;  // tangential crossing: keep the bisection value
    const double step = (st.r - r_target) / st.dr;
    s = std::clamp(s - step, a, b);
    if (std::abs(step) < 1e-15) break;
  }
  return s;
}

}  // namespace

double max_warp(const Profile& p) {
  double best = 0.0;
  for (double r : linspace(0.0, p.r_max(), 4001)) best = std::max(best, p.m(r));
  return best;
}

bool warp_increasing(const Profile& p) {
  for (double r : linspace(0.0, p.r_max(), 4001))
    if (!(p.m1(r) > 0.0)) return false;
  return true;
}

double f_length(const Profile& p, const GeodesicPath& curve) {
  return curve_length(curve, [&](const GeodesicState& st) {
    return eval_F(p, st.point(), st.velocity());
  });
}

double h_length(const Profile& p, const GeodesicPath& curve) {
  return curve_length(curve, [&](const GeodesicState& st) {
    return std::sqrt(h_norm_sq(p, st.r, st.velocity()));
  });
}

GeodesicPath parallel_curve(const Profile& p, double r0, double theta0, double rate,
                            double s_end) {
  if (!(r0 > 0.0) || r0 > p.r_max())
    throw Error(ErrorKind::domain, "parallel radius must lie in (0, r_max]");
  if (!(s_end > 0.0)) throw Error(ErrorKind::invalid_parameter, "s_end must be > 0");
  GeodesicPath path;
  path.kind = PathKind::parallel;
  path.tag = MetricTag::F;
  const double m0 = p.m(r0);
  path.nu = m0 * m0 * rate;
  const auto n = static_cast<std::size_t>(std::max(4.0, std::ceil(s_end / 0.1)));
  for (std::size_t k = 0; k <= n; ++k) {
    const double s = s_end * static_cast<double>(k) / static_cast<double>(n);
    path.samples.push_back({s, {r0, theta0 + rate * s, 0.0, rate}, 0.0, 0.0});
  }
  return path;
}

ParallelLengths parallel_lengths(const Profile& p, double r0) {
  ParallelLengths out;
  out.r0 = r0;
  out.m0 = p.m(r0);
  const double mu = p.mu(), m = out.m0;
  navigation_transform(p, r0);  // rejects mu m >= 1
  out.L_plus = f_length(p, parallel_curve(p, r0, 0.0, 1.0, 2.0 * kPi));
  out.L_minus = f_length(p, parallel_curve(p, r0, 0.0, -1.0, 2.0 * kPi));
  out.L_h = h_length(p, parallel_curve(p, r0, 0.0, 1.0, 2.0 * kPi));
  out.loop_plus_closed = 2.0 * kPi * m / (1.0 + mu * m);
  if (mu > 0.0) {
    out.length_eq_plus = f_length(p, parallel_curve(p, r0, 0.0, mu, 2.0 * kPi));
    out.length_eq_minus = f_length(p, parallel_curve(p, r0, 0.0, -mu, 2.0 * kPi));
  }
  out.corollary_plus = kPi * m / (1.0 + mu * m);
  out.corollary_minus = kPi * m / (1.0 - mu * m);
  out.ratio_plus = out.L_plus / out.corollary_plus;
  out.ratio_minus = out.L_minus / out.corollary_minus;
  out.corollary_consistent =
      std::abs(out.ratio_plus - 1.0) < 1e-9 && std::abs(out.ratio_minus - 1.0) < 1e-9;
  return out;
}

MeetingPoint meeting_point(const Profile& p, double r0) {
  MeetingPoint out;
  const double mu = p.mu();
  const double m = p.m(r0);
  navigation_transform(p, r0);
  out.closed_s1 = kPi * (1.0 + mu * m);
  out.closed_s2 = kPi * (1.0 - mu * m);
  out.closed_length = kPi * mu * m;
  if (mu == 0.0) {
    // No wind: both travellers stand still, the split is symmetric.
    out.s1 = out.s2 = kPi;
  } else {
    out.rate_plus = f_length(p, parallel_curve(p, r0, 0.0, mu, 1.0));
    out.rate_minus = f_length(p, parallel_curve(p, r0, 0.0, -mu, 1.0));
    const double sum = out.rate_plus + out.rate_minus;
    out.s1 = 2.0 * kPi * out.rate_minus / sum;
    out.s2 = 2.0 * kPi * out.rate_plus / sum;
    out.common_length = f_length(p, parallel_curve(p, r0, 0.0, mu, out.s1));
    const double other = f_length(p, parallel_curve(p, r0, 0.0, -mu, out.s2));
    out.max_deviation = std::abs(other - out.closed_length);
  }
  out.max_deviation = std::max({out.max_deviation, std::abs(out.s1 - out.closed_s1),
                                std::abs(out.s2 - out.closed_s2),
                                std::abs(out.common_length - out.closed_length)});
  return out;
}

double momentum_p2(const Profile& p, const GeodesicState& state) {
  if (state.r <= 0.0)
    throw Error(ErrorKind::vertex_singular, "momentum is not defined at the vertex");
  const RandersData d = navigation_transform(p, state.r);
  const double y1 = state.dr, y2 = state.dtheta;
  const double alpha = std::sqrt(d.a11 * y1 * y1 + d.a22 * y2 * y2);
  if (alpha == 0.0) throw Error(ErrorKind::invalid_parameter, "zero velocity");
  const double F = alpha + d.b2 * y2;
  return F * (d.a22 * y2 / alpha + d.b2);
}

ClairautReport clairaut_verify(const Profile& p, const GeodesicPath& pathF) {
  if (pathF.tag != MetricTag::F)
    throw Error(ErrorKind::invalid_parameter, "clairaut_verify expects an F-path");
  ClairautReport rep;
  const double mu = pathF.twist_mu;
  const double nu = pathF.nu;
  rep.nu = nu;
  for (const PathSample& ps : pathF.samples) {
    const GeodesicState& P = ps.state;
    const double m = p.m(P.r);
    if (P.r <= 0.0 || m < 1e-12) continue;
    const double dth_h = P.dtheta - mu;
    const double phi = std::atan2(m * dth_h, P.dr);
    const double psi = std::atan2(m * P.dtheta, P.dr);
    const double speed_h = std::hypot(P.dr, m * dth_h);
    const double speed_P = std::hypot(P.dr, m * P.dtheta);
    const double S = std::sqrt(1.0 + 2.0 * mu * nu + mu * mu * m * m);

    rep.max_h_residual =
        std::max(rep.max_h_residual, std::abs(m * (m * dth_h / speed_h) - nu));
    // Left-hand sides use the measured |P'|_h rather than the closed form S.
    rep.max_F1_residual = std::max(
        rep.max_F1_residual, std::abs(speed_P * std::cos(psi - phi) - (1.0 + mu * nu)));
    rep.max_F2_residual = std::max(
        rep.max_F2_residual, std::abs(m * (m * P.dtheta / speed_P) - (nu + mu * m * m) / S));
    rep.max_momentum_residual =
        std::max(rep.max_momentum_residual,
                 std::abs(momentum_p2(p, P) - nu / (1.0 + mu * nu)));
    const double inner = P.dr * P.dr + m * m * dth_h * P.dtheta;
    rep.max_inner_residual =
        std::max(rep.max_inner_residual, std::abs(inner - (1.0 + mu * nu)));
    ++rep.samples;
  }
  return rep;
}

double distance_from_vertex(const Profile& p, const SurfacePoint& q) {
  check_point(p, q, "point");
  return q.r;
}

VertexShot shoot_from_vertex(const Profile& p, const SurfacePoint& target) {
  check_point(p, target, "target");
  VertexShot out;
  if (target.r == 0.0) return out;
  const double length = std::min(p.r_max(), target.r + 0.5);
  double heading = target.theta;
  GeodesicPath path;
  double s_hit = 0.0;
  for (int it = 0; it < 20; ++it) {
    path = integrate_F(p, {0.0, heading}, {1.0, p.mu()}, length);
    s_hit = radius_crossing(p, path, path.s_begin(), path.s_end(), target.r);
    out.miss = wrap_angle(path.at(s_hit).theta - target.theta);
    out.iterations = it + 1;
    if (std::abs(out.miss) < 1e-15) break;
    heading -= out.miss;  // the miss depends on the heading with slope 1
  }
  out.heading = heading;
  out.parameter_length = s_hit;
  out.f_length = f_length(p, truncate(path, s_hit));
  return out;
}

namespace {

struct Sweep {
  double theta = 0.0;
  double length = 0.0;
};

// Clairaut-constant sweep from the lower point, heading phi in [0, pi]
// measured from the outward meridian. Valid when m is increasing.
class HSweep {
 public:
  HSweep(const Profile& p, double r_lo, double r_hi)
      : p_(p), r_lo_(r_lo), r_hi_(r_hi), m_lo_(p.m(r_lo)) {}

  Sweep operator()(double phi) {
    ++evaluations;
    if (phi <= 0.0) return {0.0, r_hi_ - r_lo_};
    if (phi >= kPi) return {kPi, r_lo_ + r_hi_};
    const double nu = nu_of(phi);
    if (nu <= 0.0) return {kPi, r_lo_ + r_hi_};
    if (phi <= 0.5 * kPi) {
      const QuadratureSegment seg = quadrature_segment(p_, r_lo_, r_hi_, nu, 1);
      return {seg.delta_theta, seg.delta_s};
    }
    const double rt = turning_radius(nu);
    const QuadratureSegment in = quadrature_segment(p_, r_lo_, rt, nu, -1);
    const QuadratureSegment out = quadrature_segment(p_, rt, r_hi_, nu, 1);
    return {in.delta_theta + out.delta_theta, in.delta_s + out.delta_s};
  }

  double nu_of(double phi) const { return m_lo_ * std::sin(phi); }

  int evaluations = 0;

 private:
  double turning_radius(double nu) const {
    if (nu >= m_lo_) return r_lo_;
    return quad::bisect([&](double r) { return p_.m(r) - nu; }, 0.0, r_lo_, 1e-15);
  }

  const Profile& p_;
  double r_lo_, r_hi_, m_lo_;
};

HDistance distance_h_sweep(const Profile& p, const SurfacePoint& q1,
                           const SurfacePoint& q2, double delta) {
  const double r_lo = std::min(q1.r, q2.r), r_hi = std::max(q1.r, q2.r);
  HSweep sweep(p, r_lo, r_hi);
  HDistance best;
  best.distance = r_lo + r_hi;  // through the vertex
  best.via_turning = true;

  constexpr int kGrid = 256;
  std::vector<double> phis(kGrid + 1);
  std::vector<Sweep> vals(kGrid + 1);
  for (int i = 0; i <= kGrid; ++i) {
    phis[i] = kPi * i / kGrid;
    vals[i] = sweep(phis[i]);
  }
  double theta_max = 0.0;
  for (const Sweep& v : vals) theta_max = std::max(theta_max, v.theta);

  std::vector<double> levels;
  for (int k = 0;; ++k) {
    const double a = delta + 2.0 * kPi * k, b = 2.0 * kPi * (k + 1) - delta;
    if (a > theta_max + 1e-12) break;
    levels.push_back(a);
    if (b <= theta_max + 1e-12) levels.push_back(b);
  }

  auto consider = [&](double phi, const Sweep& v) {
    if (v.length < best.distance) {
      best.distance = v.length;
      best.nu = sweep.nu_of(phi);
      best.via_turning = phi > 0.5 * kPi;
    }
  };
  for (double level : levels) {
    for (int i = 0; i < kGrid; ++i) {
      const double fa = vals[i].theta - level, fb = vals[i + 1].theta - level;
      if (fa == 0.0) consider(phis[i], vals[i]);
      if (fa == 0.0 || fb == 0.0 || (fa < 0.0) == (fb < 0.0)) continue;
      auto f = [&](double phi) { return sweep(phi).theta - level; };
      std::uintmax_t iters = 80;
      const auto root = boost::math::tools::toms748_solve(
          f, phis[i], phis[i + 1], fa, fb, boost::math::tools::eps_tolerance<double>(52),
          iters);
      const double phi = 0.5 * (root.first + root.second);
      consider(phi, sweep(phi));
    }
    const double fe = vals[kGrid].theta - level;
    if (std::abs(fe) < 1e-14) consider(phis[kGrid], vals[kGrid]);
  }
  best.evaluations = sweep.evaluations;
  return best;
}

}  // namespace

HDistance distance_h(const Profile& p, const SurfacePoint& q1, const SurfacePoint& q2) {
  check_point(p, q1, "first point");
  check_point(p, q2, "second point");
  HDistance out;
  if (q1.r == 0.0 || q2.r == 0.0) {
    out.distance = q1.r + q2.r;
    return out;
  }
  const double delta = std::abs(wrap_angle(q2.theta - q1.theta));
  if (delta < 1e-15) {
    out.distance = std::abs(q2.r - q1.r);
    return out;
  }
  if (warp_increasing(p)) return distance_h_sweep(p, q1, q2, delta);

  // General warp: shoot h-geodesics; the path through the vertex bounds d_h.
  out.distance = q1.r + q2.r;
  out.via_turning = true;
  FanOptions fan;
  fan.headings = 360;
  fan.max_length = q1.r + q2.r + 1e-6;
  for (const ShotHit& hit : shoot_fan(p, q1, q2, fan)) {
    ++out.evaluations;
    if (hit.length < out.distance) {
      out.distance = hit.length;
      out.nu = p.m(q1.r) * std::sin(hit.heading);
      out.via_turning = false;
    }
  }
  return out;
}

DistanceReport distance_F(const Profile& p, const SurfacePoint& q1,
                          const SurfacePoint& q2, const DistanceOptions& options) {
  check_point(p, q1, "first point");
  check_point(p, q2, "second point");
  DistanceReport rep;
  const double mu = p.mu();
  rep.t_max = options.t_max > 0.0 ? options.t_max
                                   : 4.0 * (q1.r + q2.r + kPi * max_warp(p));
  if (q1.r == 0.0 || q2.r == 0.0) {
    rep.distance = q1.r + q2.r;
    rep.bracket_lo = rep.bracket_hi = rep.distance;
    return rep;
  }
  navigation_transform(p, q2.r);
  auto g = [&](double T) {
    ++rep.dh_evaluations;
    return distance_h(p, q1, {q2.r, q2.theta - mu * T}).distance - T;
  };
  // The moving point has h-speed c = mu m(r2) < 1, so g is strictly
  // decreasing with slope in [-1-c, -1+c]; its unique root is bracketed.
  const double g0 = g(0.0);
  if (g0 <= 0.0) return rep;
  const double c = mu * p.m(q2.r);
  double lo = g0 / (1.0 + c);
  double hi = g0 / (1.0 - c);
  if (lo > rep.t_max)
    throw Error(ErrorKind::search_horizon, "distance exceeds the search horizon T_max");
  hi = std::min(hi, rep.t_max);
  const double glo = g(lo);
  const double ghi = g(hi);
  if (ghi > 0.0)
    throw Error(ErrorKind::search_horizon, "no root of the distance equation below T_max");
  rep.bracket_lo = lo;
  rep.bracket_hi = hi;
  if (glo == 0.0 || ghi == 0.0) {
    rep.distance = glo == 0.0 ? lo : hi;
    rep.iterations = 0;
    return rep;
  }
  std::uintmax_t iters = 200;
  const double tol = options.tol;
  const auto root = boost::math::tools::toms748_solve(
      g, lo, hi, glo, ghi, [tol](double a, double b) { return std::abs(b - a) <= tol; },
      iters);
  rep.iterations = static_cast<int>(iters);
  rep.distance = 0.5 * (root.first + root.second);
  rep.residual = g(rep.distance);
  return rep;
}

std::vector<ShotHit> shoot_fan(const Profile& p, const SurfacePoint& q,
                               const SurfacePoint& target, const FanOptions& options) {
  if (q.r <= 0.0)
    throw Error(ErrorKind::vertex_singular, "fan shooting starts away from the vertex");
  if (!(options.max_length > 0.0) || options.headings < 8)
    throw Error(ErrorKind::invalid_parameter, "fan needs max_length > 0 and >= 8 headings");
  const double ry = target.r;
  IntegrateOptions io;
  io.tol = options.tol;

  struct Crossing {
    double s, miss;
  };
  auto crossings = [&](double heading) {
    std::vector<Crossing> out;
    GeodesicPath path;
    try {
      path = integrate_h(p, h_unit_state(p, q, heading), options.max_length, io);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::numerical_blowup) throw;
      return out;
    }
    for (std::size_t i = 0; i + 1 < path.samples.size(); ++i) {
      const double fa = path.samples[i].state.r - ry;
      const double fb = path.samples[i + 1].state.r - ry;
      // A sample landing exactly on the radius was counted by the previous interval.
      if (fa == 0.0) continue;
      if (fb == 0.0 || (fa < 0.0) != (fb < 0.0)) {
        const double s =
            fb == 0.0 ? path.samples[i + 1].s
                      : radius_crossing(p, path, path.samples[i].s,
                                        path.samples[i + 1].s, ry, io);
        const GeodesicState st = exact_state(p, path, s, io);
        out.push_back({s, wrap_angle(st.theta + options.wind * s - target.theta)});
      }
    }
    return out;
  };

  const std::size_t n = options.headings;
  std::vector<double> headings(n + 1);
  std::vector<std::vector<Crossing>> fan(n + 1);
  for (std::size_t j = 0; j < n; ++j) {
    headings[j] = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
    fan[j] = crossings(headings[j]);
  }
  headings[n] = 2.0 * kPi;
  fan[n] = fan[0];

  std::vector<ShotHit> hits;
  for (std::size_t j = 0; j < n; ++j) {
    const auto& A = fan[j];
    const auto& B = fan[j + 1];
    for (std::size_t k = 0; k < std::min(A.size(), B.size()); ++k) {
      const double ma = A[k].miss, mb = B[k].miss;
      if (std::abs(ma) > 1.0 || std::abs(mb) > 1.0) continue;
      if (ma != 0.0 && mb != 0.0 && (ma < 0.0) == (mb < 0.0)) continue;
      auto miss_of = [&](double h) {
        const auto c = crossings(h);
        if (c.size() <= k) throw Error(ErrorKind::invalid_bracket, "crossing vanished");
        return c[k].miss;
      };
      try {
        double phi = headings[j];
        if (ma == 0.0) {
          phi = headings[j];
        } else if (mb == 0.0) {
          phi = headings[j + 1];
        } else {
          std::uintmax_t iters = 80;
          const auto root = boost::math::tools::toms748_solve(
              miss_of, headings[j], headings[j + 1], ma, mb,
              boost::math::tools::eps_tolerance<double>(50), iters);
          phi = 0.5 * (root.first + root.second);
        }
        const auto c = crossings(phi);
        if (c.size() <= k || std::abs(c[k].miss) > 1e-6) continue;
        hits.push_back({reduce_angle(phi), c[k].s, c[k].miss, k});
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::invalid_bracket) throw;
      }
    }
  }
  std::sort(hits.begin(), hits.end(),
            [](const ShotHit& a, const ShotHit& b) { return a.length < b.length; });
  // Neighbouring brackets can converge to the same geodesic.
  std::vector<ShotHit> unique;
  for (const ShotHit& h : hits) {
    const bool dup = std::any_of(unique.begin(), unique.end(), [&](const ShotHit& u) {
      return std::abs(u.length - h.length) < 1e-7 &&
             std::abs(wrap_angle(u.heading - h.heading)) < 1e-7;
    });
    if (!dup) unique.push_back(h);
  }
  return unique;
}

}  // namespace randers
