#include "randers/conjugate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "randers/error.hpp"
#include "randers/ode.hpp"
#include "randers/quadrature.hpp"

namespace randers {

namespace {

constexpr double kPi = std::numbers::pi;
using V2 = ode::Vec<2>;

struct JacobiStepper {
  const Profile& p;
  const std::function<double(double)>& radius;
  JacobiOptions options;

  V2 rhs(double s, const V2& y) const {
    return {y[1], -gauss_curvature(p, radius(s)) * y[0]};
  }

  // Adaptive integration of (y, y') from s0 to s1; calls `accept` after each step.
  template <class Accept>
  V2 run(double s0, V2 y, double s1, Accept&& accept, std::size_t* steps = nullptr) const {
    auto f = [this](double s, const V2& v) { return rhs(s, v); };
    const ode::Tolerance tol{options.tol, options.tol};
    double s = s0;
    V2 k1 = f(s, y);
    double h = std::min(options.max_step, 1e-3);
    while (s < s1) {
      const bool last = h >= s1 - s;
      const double step = last ? s1 - s : h;
      const auto trial = ode::dopri5_trial<2>(f, s, y, k1, step, tol);
      if (!std::isfinite(trial.error) || trial.error > 1.0) {
        h = std::isfinite(trial.error) ? ode::next_step(step, trial.error) : 0.25 * step;
        if (h < 1e-15 * std::max(1.0, s))
          throw Error(ErrorKind::numerical_blowup, "Jacobi step size underflow");
        continue;
      }
      s = last ? s1 : s + step;
      y = trial.y;
      k1 = trial.dydt;
      if (steps) ++*steps;
      accept(s, y);
      h = std::min(options.max_step, ode::next_step(step, trial.error));
    }
    return y;
  }
};

void require_von_mangoldt(const Profile& p) {
  const std::vector<double> grid = radius_grid(p.r_max(), p.r_max() / 2000.0);
  const VonMangoldtVerdict v = is_von_mangoldt(p, grid);
  if (!v.holds)
    throw Error(ErrorKind::invalid_parameter,
                "profile is not von Mangoldt (curvature increases near r=" +
                    std::to_string(grid[*v.violation_index]) + ")");
}

}  // namespace

JacobiResult jacobi_integrate(const Profile& p, const std::function<double(double)>& radius,
                              double y0, double yp0, double upto,
                              const JacobiOptions& options) {
  if (!(upto > 0.0)) throw Error(ErrorKind::invalid_parameter, "upto must be > 0");
  JacobiStepper st{p, radius, options};
  JacobiResult out;
  out.samples.push_back({0.0, y0, yp0});
  st.run(0.0, V2{y0, yp0}, upto,
         [&](double s, const V2& y) { out.samples.push_back({s, y[0], y[1]}); },
         &out.steps);

  for (std::size_t i = 0; i + 1 < out.samples.size(); ++i) {
    const JacobiState& a = out.samples[i];
    const JacobiState& b = out.samples[i + 1];
    const bool from_zero_start = i == 0 && a.y == 0.0;
    if (b.y == 0.0) {
      out.first_zero = b.s;
      break;
    }
    if (from_zero_start || (a.y < 0.0) == (b.y < 0.0)) continue;
    // Refine on re-integrated values, not on an interpolant.
    auto value = [&](double s) {
      if (s <= a.s) return a.y;
      return st.run(a.s, V2{a.y, a.yp}, s, [](double, const V2&) {})[0];
    };
    out.first_zero = quad::bisect(value, a.s, b.s, 1e-13);
    break;
  }
  return out;
}

JacobiResult jacobi_integrate(const Profile& p, const GeodesicPath& base, double y0,
                              double yp0, double upto, const JacobiOptions& options) {
  if (base.tag != MetricTag::h)
    throw Error(ErrorKind::invalid_parameter, "Jacobi fields are integrated along h-paths");
  const double s0 = base.s_begin();
  if (upto > base.parameter_length() * (1.0 + 1e-12))
    throw Error(ErrorKind::invalid_parameter, "upto exceeds the base path");
  std::function<double(double)> radius = [&base, s0](double s) {
    return std::abs(base.at(s0 + s).r);
  };
  return jacobi_integrate(p, radius, y0, yp0, upto, options);
}

std::function<double(double)> tau_radius(double rho) {
  return [rho](double s) { return std::abs(rho - s); };
}

SurfacePoint tau_point(const SurfacePoint& q, double s) {
  if (s <= q.r) return {q.r - s, q.theta};
  return {s - q.r, q.theta + kPi};
}

double first_conjugate(const Profile& p, const SurfacePoint& q, const JacobiOptions& options) {
  if (!(q.r > 0.0))
    throw Error(ErrorKind::invalid_parameter,
                "q is the vertex: it is a pole and its cut locus is empty");
  if (q.r > p.r_max()) throw Error(ErrorKind::domain, "q lies beyond r_max");
  require_von_mangoldt(p);
  const double rho = q.r;
  const double horizon = rho + p.r_max();
  const JacobiResult jr = jacobi_integrate(p, tau_radius(rho), 0.0, 1.0, horizon, options);
  if (!jr.first_zero)
    throw Error(ErrorKind::horizon, "no conjugate point along tau_q before s=" +
                                        std::to_string(horizon) + " (c > " +
                                        std::to_string(horizon) + ")");
  if (!(*jr.first_zero > rho))
    throw Error(ErrorKind::verification_failed,
                "first conjugate parameter does not exceed rho");
  return *jr.first_zero;
}

SurfacePoint cut_point(const Profile& p, const SurfacePoint& q, double s) {
  const SurfacePoint x = tau_point(q, s);
  const double T = distance_h(p, q, x).distance;
  return {x.r, x.theta + p.mu() * T};
}

CutArc cut_locus(const Profile& p, const SurfacePoint& q, std::optional<double> s_export_max,
                 std::size_t n_samples) {
  if (n_samples < 2) throw Error(ErrorKind::invalid_parameter, "need at least 2 samples");
  CutArc arc;
  arc.q = q;
  arc.rho = q.r;
  arc.mu = p.mu();
  arc.c = first_conjugate(p, q);
  double s_max = s_export_max.value_or(arc.c + 10.0 * std::max(1.0, arc.rho));
  s_max = std::min(s_max, arc.rho + p.r_max());
  if (!(s_max > arc.c))
    throw Error(ErrorKind::invalid_parameter, "export range ends before the conjugate point");
  for (double s : linspace(arc.c, s_max, n_samples)) {
    const SurfacePoint x = tau_point(q, s);
    const double T = distance_h(p, q, x).distance;
    arc.samples.push_back({s, x.r, x.theta + arc.mu * T, T});
    arc.twisted_samples.push_back({s, x.r, x.theta + arc.mu * s, s});
  }
  return arc;
}

CutPointCheck verify_cut_point(const Profile& p, const SurfacePoint& q,
                               const SurfacePoint& y, std::size_t expected, double tol,
                               std::size_t headings) {
  CutPointCheck out;
  out.y = y;
  out.expected = expected;
  DistanceOptions dopt;
  dopt.tol = 1e-11;
  out.distance = distance_F(p, q, y, dopt).distance;

  FanOptions fan;
  fan.headings = headings;
  fan.max_length = out.distance + 0.05;
  fan.wind = p.mu();
  fan.tol = 1e-11;
  out.hits = shoot_fan(p, q, y, fan);
  for (const ShotHit& h : out.hits)
    if (std::abs(h.length - out.distance) <= tol) out.minimizers.push_back(h);
  if (out.minimizers.size() >= 2) {
    const auto [lo, hi] = std::minmax_element(
        out.minimizers.begin(), out.minimizers.end(),
        [](const ShotHit& a, const ShotHit& b) { return a.length < b.length; });
    out.length_gap = hi->length - lo->length;
  }
  out.passed = out.minimizers.size() == expected && out.length_gap <= 1e-5;
  return out;
}

PoleCertificate certify_pole(const Profile& p, std::optional<double> r_max) {
  PoleCertificate cert;
  cert.r_max = r_max.value_or(p.r_max());
  cert.mu = p.mu();
  if (!(cert.r_max > 1.0)) throw Error(ErrorKind::invalid_parameter, "r_max must exceed 1");
  cert.lower_bound = cert.mu * cert.mu * (cert.r_max - 1.0) / (4.0 * kPi * kPi);
  cert.integral = quad::integrate(
      [&](double r) {
        const double L = 2.0 * kPi * p.m(r);
        return 1.0 / (L * L);
      },
      1.0, cert.r_max, 1e-12);

  const std::function<double(double)> radius = [](double s) { return s; };
  const JacobiResult jr = jacobi_integrate(p, radius, 0.0, 1.0, cert.r_max);
  cert.jacobi_min_value = std::numeric_limits<double>::infinity();
  for (const JacobiState& js : jr.samples) {
    cert.jacobi_max_deviation = std::max(cert.jacobi_max_deviation, std::abs(js.y - p.m(js.s)));
    if (js.s > 0.0) cert.jacobi_min_value = std::min(cert.jacobi_min_value, js.y);
  }
  cert.certified = !jr.first_zero && cert.jacobi_min_value > 0.0 &&
                   cert.integral >= cert.lower_bound * (1.0 - 1e-12);
  return cert;
}

SpreadConjugate spread_conjugate(const Profile& p, const SurfacePoint& q, double delta) {
  if (!(q.r > 0.0)) throw Error(ErrorKind::invalid_parameter, "q must differ from the vertex");
  if (!(delta > 0.0 && delta < 0.5)) throw Error(ErrorKind::invalid_parameter, "delta in (0, 0.5)");
  SpreadConjugate out;
  IntegrateOptions io;
  io.tol = 1e-13;
  const double horizon = std::min(q.r + p.r_max() - 1e-9, 3.0 * q.r + 20.0);

  auto meeting = [&](double d) {
    // Mirror-image pair: the angular gap reaches 2 pi where they meet again.
    const Tangent yp = f_unit_tangent(p, q, kPi + d);
    const Tangent ym = f_unit_tangent(p, q, kPi - d);
    std::vector<double> grid;
    for (double s = 0.02; s < horizon; s += 0.02) grid.push_back(s);
    const GeodesicPath a = integrate_F_spray(p, q, yp, horizon, io, grid);
    const GeodesicPath b = integrate_F_spray(p, q, ym, horizon, io, grid);
    // The spray stores every accepted step; pick out the samples on the grid.
    auto on_grid = [&](const GeodesicPath& g) {
      std::vector<std::size_t> idx;
      std::size_t k = 0;
      for (std::size_t i = 0; i < g.samples.size() && k < grid.size(); ++i)
        if (g.samples[i].s == grid[k]) {
          idx.push_back(i);
          ++k;
        }
      return idx;
    };
    const std::vector<std::size_t> ia = on_grid(a), ib = on_grid(b);
    auto gap_at = [&](double s, std::size_t k) {
      // Exact states, re-integrated from grid point k.
      auto advance = [&](const GeodesicPath& g, std::size_t i) {
        const GeodesicState& st = g.samples[i].state;
        if (s == g.samples[i].s) return st;
        return integrate_F_spray(p, st.point(), st.velocity(), s - g.samples[i].s, io)
            .samples.back()
            .state;
      };
      return std::abs(advance(a, ia[k]).theta - advance(b, ib[k]).theta) - 2.0 * kPi;
    };
    auto gap_grid = [&](std::size_t k) {
      return std::abs(a.samples[ia[k]].state.theta - b.samples[ib[k]].state.theta) - 2.0 * kPi;
    };
    const std::size_t n = std::min(ia.size(), ib.size());
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (grid[k] < q.r) continue;
      const double ga = gap_grid(k), gb = gap_grid(k + 1);
      if ((ga < 0.0) == (gb < 0.0)) continue;
      return quad::bisect([&](double s) { return gap_at(s, k); }, grid[k], grid[k + 1], 1e-14);
    }
    throw Error(ErrorKind::horizon, "neighbouring geodesics did not meet before the horizon");
  };

  for (double d : {delta, 0.5 * delta, 0.25 * delta}) {
    out.deltas.push_back(d);
    out.meeting.push_back(meeting(d));
  }
  const double r1a = (4.0 * out.meeting[1] - out.meeting[0]) / 3.0;
  const double r1b = (4.0 * out.meeting[2] - out.meeting[1]) / 3.0;
  out.c_extrapolated = (16.0 * r1b - r1a) / 15.0;
  return out;
}

}  // namespace randers
