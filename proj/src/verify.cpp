#include "randers/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "randers/conjugate.hpp"
#include "randers/embed.hpp"
#include "randers/error.hpp"
#include "randers/geodesics.hpp"
#include "randers/measure.hpp"
#include "randers/quadrature.hpp"

namespace randers::verify {

namespace {

constexpr double kPi = std::numbers::pi;
using io::json;

std::mt19937_64 stream(const Options& o, int id) {
  std::seed_seq seq{static_cast<std::uint32_t>(o.seed), static_cast<std::uint32_t>(o.seed >> 32),
                    static_cast<std::uint32_t>(id)};
  return std::mt19937_64(seq);
}

double uniform(std::mt19937_64& rng, double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng);
}

Check make(int id, const char* key, const char* title, double value, const char* relation,
           double threshold) {
  Check c;
  c.id = id;
  c.key = key;
  c.title = title;
  c.value = value;
  c.relation = relation;
  c.threshold = threshold;
  const std::string rel = relation;
  c.passed = rel == "<=" ? value <= threshold : rel == ">=" ? value >= threshold : value > threshold;
  return c;
}

IntegrateOptions ode(const Options& o) {
  IntegrateOptions io;
  io.tol = o.tol_ode;
  return io;
}

// The 20 random h-geodesics shared by the first four checks.
struct RandomPaths {
  std::vector<GeodesicPath> h, F;
  json cases = json::array();
};

RandomPaths random_paths(const Profile& p, const Options& o) {
  auto rng = stream(o, 1);
  RandomPaths out;
  for (int i = 0; i < 20; ++i) {
    const SurfacePoint q{uniform(rng, 0.5, 5.0), uniform(rng, 0.0, 2.0 * kPi)};
    const double heading = uniform(rng, 0.0, 2.0 * kPi);
    const double length = uniform(rng, 5.0, 50.0);
    out.h.push_back(integrate_h(p, h_unit_state(p, q, heading), length, ode(o)));
    out.F.push_back(twist(out.h.back(), p.mu()));
    out.cases.push_back({{"r0", q.r}, {"theta0", q.theta}, {"heading", heading},
                         {"length", length}, {"reached", out.h.back().parameter_length()}});
  }
  return out;
}

Profile paraboloid(const Options& o) { return make_paraboloid(o.mu); }

Check clairaut_h(const Options& o) {
  const Profile p = paraboloid(o);
  const RandomPaths rp = random_paths(p, o);
  double worst = 0.0;
  for (const GeodesicPath& g : rp.h) {
    const double nu = clairaut_constant(p, g.samples.front().state);
    for (const PathSample& s : g.samples) {
      const double m = p.m(s.state.r);
      worst = std::max(worst, std::abs(m * m * s.state.dtheta - nu));
    }
  }
  Check c = make(1, "clairaut_h", "Clairaut conservation along h-geodesics, max |m^2 theta' - nu|",
                 worst, "<=", 1e-7);
  c.details = {{"paths", rp.cases}};
  return c;
}

Check clairaut_F(const Options& o) {
  const Profile p = paraboloid(o);
  const RandomPaths rp = random_paths(p, o);
  double f1 = 0.0, f2 = 0.0, inner = 0.0;
  for (const GeodesicPath& g : rp.F) {
    const ClairautReport r = clairaut_verify(p, g);
    f1 = std::max(f1, r.max_F1_residual);
    f2 = std::max(f2, r.max_F2_residual);
    inner = std::max(inner, r.max_inner_residual);
  }
  Check c = make(2, "clairaut_F", "Finslerian Clairaut relations along twisted geodesics",
                 std::max(f1, f2), "<=", 1e-7);
  c.details = {{"max_F1_residual", f1}, {"max_F2_residual", f2}, {"max_inner_residual", inner}};
  return c;
}

Check momentum(const Options& o) {
  const Profile p = paraboloid(o);
  const RandomPaths rp = random_paths(p, o);
  double worst = 0.0;
  for (const GeodesicPath& g : rp.F)
    worst = std::max(worst, clairaut_verify(p, g).max_momentum_residual);
  return make(3, "momentum", "Finslerian momentum, max |p2 - nu/(1+mu nu)|", worst, "<=", 1e-8);
}

Check navigation(const Options& o) {
  const Profile p = paraboloid(o);
  const RandomPaths rp = random_paths(p, o);
  double worst = 0.0;
  for (const GeodesicPath& g : rp.F) worst = std::max(worst, f_unit_residual(p, g));
  return make(4, "navigation", "Twisted unit h-geodesics are F-unit, max |F(P') - 1|", worst,
              "<=", 1e-8);
}

Check meeting(const Options& o) {
  const Profile p = paraboloid(o);
  auto rng = stream(o, 5);
  double worst = 0.0;
  json cases = json::array();
  for (int i = 0; i < 10; ++i) {
    const double r0 = uniform(rng, 0.2, 10.0);
    const MeetingPoint mp = meeting_point(p, r0);
    worst = std::max(worst, mp.max_deviation);
    cases.push_back({{"r0", r0}, {"s1", mp.s1}, {"s2", mp.s2}, {"length", mp.common_length},
                     {"deviation", mp.max_deviation}});
  }
  // m0 = 1/2 on the mu = 1 paraboloid sits at r0 = 1/sqrt(3).
  const MeetingPoint half = meeting_point(make_paraboloid(1.0), 1.0 / std::sqrt(3.0));
  const double spot = std::abs(half.common_length - kPi / 2.0);
  Check c = make(5, "meeting_point", "Meeting point of the two parallel travellers vs closed form",
                 std::max(worst, spot), "<=", 1e-10);
  c.details = {{"random", cases},
               {"m0_half", io::to_json(half)},
               {"m0_half_length_error", spot}};
  return c;
}

Check length_order(const Options& o) {
  const Profile p = paraboloid(o);
  double margin = std::numeric_limits<double>::infinity();
  json cases = json::array();
  for (double r0 : linspace(0.5, 10.0, 10)) {
    const ParallelLengths pl = parallel_lengths(p, r0);
    margin = std::min({margin, pl.L_h - pl.L_plus, pl.L_minus - pl.L_h});
    cases.push_back({{"r0", r0}, {"L_plus", pl.L_plus}, {"L_h", pl.L_h}, {"L_minus", pl.L_minus}});
  }
  Check c = make(6, "length_order", "L+ < L_h < L- on parallels, smallest gap", margin, ">=", 1e-6);
  c.details = {{"parallels", cases}};
  return c;
}

Check vertex_distance(const Options& o) {
  const Profile p = paraboloid(o);
  auto rng = stream(o, 7);
  double worst = 0.0;
  json cases = json::array();
  for (int i = 0; i < 10; ++i) {
    const SurfacePoint t{uniform(rng, 0.3, 8.0), uniform(rng, 0.0, 2.0 * kPi)};
    const VertexShot shot = shoot_from_vertex(p, t);
    const double err = std::abs(shot.parameter_length - t.r);
    worst = std::max(worst, err);
    cases.push_back({{"target", io::to_json(t)}, {"parameter_length", shot.parameter_length},
                     {"f_length", shot.f_length}, {"miss", shot.miss},
                     {"iterations", shot.iterations}});
  }
  Check c = make(7, "vertex_distance", "Shots from the vertex reach r0 after parameter r0",
                 worst, "<=", 1e-7);
  c.details = {{"targets", cases}};
  return c;
}

// Parameter at which f(exact state) changes sign on the sampled path.
double crossing(const Profile& p, const GeodesicPath& g, const IntegrateOptions& io,
                const std::function<double(const GeodesicState&)>& f, double s_min) {
  for (std::size_t i = 0; i + 1 < g.samples.size(); ++i) {
    if (g.samples[i + 1].s <= s_min) continue;
    const double a = f(g.samples[i].state), b = f(g.samples[i + 1].state);
    if ((a < 0.0) == (b < 0.0)) continue;
    return quad::bisect([&](double s) { return f(exact_state(p, g, s, io)); },
                        std::max(g.samples[i].s, s_min), g.samples[i + 1].s, 1e-13);
  }
  throw Error(ErrorKind::horizon, "no crossing along the oracle path");
}

Check ode_quadrature(const Options& o) {
  auto rng = stream(o, 8);
  const IntegrateOptions io = ode(o);
  double worst = 0.0;
  json cases = json::array();

  // One turning point on the paraboloid: from r_t out to a random radius.
  const Profile p = paraboloid(o);
  const double m_top = p.m(p.r_max());
  for (int i = 0; i < 10; ++i) {
    const double nu = uniform(rng, 0.05, 0.9) * m_top;
    const double rt = quad::bisect([&](double r) { return p.m(r) - nu; }, 0.0, p.r_max(), 1e-15);
    const double rb = std::min(rt + uniform(rng, 0.5, 4.0), 0.9 * p.r_max());
    const QuadratureSegment qs = quadrature_segment(p, rt, rb, nu, 1);
    const GeodesicPath g =
        integrate_h(p, h_unit_state(p, {rt, 0.0}, kPi / 2.0), 4.0 * (rb - rt) + 20.0, io);
    const double s = crossing(p, g, io, [rb](const GeodesicState& st) { return st.r - rb; }, 0.0);
    const double dth = exact_state(p, g, s, io).theta;
    const double err = std::max(std::abs(s - qs.delta_s), std::abs(dth - qs.delta_theta));
    worst = std::max(worst, err);
    cases.push_back({{"profile", "paraboloid"}, {"nu", nu}, {"bracket", {rt, rb}},
                     {"ode", {dth, s}}, {"quadrature", {qs.delta_theta, qs.delta_s}}});
  }

  // Two turning points on m = r/(1+r^2): one full outward sweep.
  const Profile bump = Profile::from_expressions("r/(1+r^2)", std::nullopt, std::nullopt, 1.0, 20.0, "bump");
  for (int i = 0; i < 10; ++i) {
    const double nu = uniform(rng, 0.1, 0.45);
    const double disc = std::sqrt(1.0 - 4.0 * nu * nu);
    const double r1 = (1.0 - disc) / (2.0 * nu), r2 = (1.0 + disc) / (2.0 * nu);
    const QuadratureSegment qs = quadrature_segment(bump, r1, r2, nu, 1);
    const GeodesicPath g =
        integrate_h(bump, h_unit_state(bump, {r1, 0.0}, kPi / 2.0), 2.0 * qs.delta_s + 5.0, io);
    const double s = crossing(bump, g, io, [](const GeodesicState& st) { return st.dr; },
                              0.5 * qs.delta_s);
    const double dth = exact_state(bump, g, s, io).theta;
    const double err = std::max(std::abs(s - qs.delta_s), std::abs(dth - qs.delta_theta));
    worst = std::max(worst, err);
    cases.push_back({{"profile", "r/(1+r^2)"}, {"nu", nu}, {"bracket", {r1, r2}},
                     {"ode", {dth, s}}, {"quadrature", {qs.delta_theta, qs.delta_s}}});
  }
  Check c = make(8, "ode_quadrature", "ODE vs quadrature, max error in (delta theta, delta s)",
                 worst, "<=", 1e-6);
  c.details = {{"cases", cases}};
  return c;
}

Check jacobi_pole(const Options& o) {
  const Profile p = paraboloid(o);
  const PoleCertificate cert = certify_pole(p, 20.0);
  Check c = make(9, "jacobi_pole", "Jacobi field along a meridian from the vertex equals m(s)",
                 cert.jacobi_max_deviation, "<=", 1e-9);
  c.passed = c.passed && cert.certified;
  c.details = io::to_json(cert);
  return c;
}

Check cut_locus_check(const Options&) {
  const Profile p = make_paraboloid(1.0);
  const SurfacePoint q{1.0, 0.0};
  const double c_par = first_conjugate(p, q);
  const SurfacePoint y_cut = cut_point(p, q, c_par + 1.0);
  const CutPointCheck on = verify_cut_point(p, q, y_cut, 2);
  // Before the conjugate point the meridian through the vertex is the only minimizer.
  const SurfacePoint y_neg = cut_point(p, q, q.r + 0.5);
  const CutPointCheck off = verify_cut_point(p, q, y_neg, 1);
  Check c = make(10, "cut_locus", "Cut locus of q=(1,0): two minimizers on the arc, one off it",
                 on.length_gap, "<=", 1e-5);
  c.passed = c.passed && c_par > q.r && on.passed && off.passed;
  c.details = {{"c", c_par}, {"rho", q.r}, {"cut_point", io::to_json(on)},
               {"negative_control", io::to_json(off)}};
  return c;
}

Check embedding(const Options& o) {
  double worst = 0.0;
  json batches = json::array();
  for (double mu : {0.3, 1.0}) {
    const Embedding e(make_paraboloid(mu));
    const PullbackReport rep = pullback_batch(e, 1000, o.seed, 0.1, 5.0);
    worst = std::max(worst, rep.max_residual);
    batches.push_back(io::to_json(rep));
  }
  const Embedding e(make_paraboloid(1.0));
  const SurfacePoint q{1.0, 0.0};
  const MinkowskiPoint x = e.point(q);
  const double F1 = eval_F_tilde(1.0, x, e.pushforward(q, {1.0, 0.0}));
  const double F2 = eval_F_tilde(1.0, x, e.pushforward(q, {0.0, 1.0}));
  const double spot = std::max(std::abs(F1 - std::sqrt(2.0)), std::abs(F2 - (std::sqrt(2.0) - 1.0)));
  Check c = make(11, "embedding", "Pullback of F~ under the embedding, max |F - F~|", worst, "<=", 1e-9);
  c.passed = c.passed && spot <= 1e-12;
  c.details = {{"batches", batches},
               {"spot_values", {F1, F2}},
               {"spot_error", spot},
               {"height_map_z_eq_r", io::to_json(height_map_check(e, linspace(0.1, 5.0, 50)))}};
  return c;
}

Check non_geodesy(const Options& o) {
  const Profile p = paraboloid(o);
  const IntegrateOptions io = ode(o);
  const double plain = f_geodesic_residual(p, integrate_h(p, h_unit_state(p, {1.0, 0.0}, 0.0), 1.0, io));
  const double generic = f_geodesic_residual(p, integrate_h(p, h_unit_state(p, {2.0, 0.0}, 0.7), 1.0, io));
  const double twisted = f_geodesic_residual(p, twisted_meridian(p, {1.0, 0.0}, 1.0, true, io));
  Check c = make(12, "non_geodesy", "F-geodesic residual: twisted meridian", twisted, "<=", 1e-7);
  c.passed = c.passed && plain >= 1e-3 && generic >= 1e-3;
  c.details = {{"plain_meridian", plain}, {"generic_h_geodesic", generic}, {"twisted_meridian", twisted},
               {"lower_bound_for_non_geodesics", 1e-3}};
  return c;
}

Check corollary(const Options& o) {
  const Profile p = paraboloid(o);
  const ParallelLengths pl = parallel_lengths(p, 1.0);
  const bool flagged = !pl.corollary_consistent;
  const bool emitted = std::isfinite(pl.loop_plus_closed) && std::isfinite(pl.corollary_plus);
  // The check passes when both values are reported and the flag agrees with them.
  const bool agrees = flagged == (std::abs(pl.ratio_plus - 1.0) >= 1e-9 ||
                                  std::abs(pl.ratio_minus - 1.0) >= 1e-9);
  Check c = make(13, "corollary_report", "Closed-loop length vs the corollary constant, ratio",
                 pl.ratio_plus, "!=", 1.0);
  c.passed = emitted && agrees;
  c.details = io::to_json(pl);
  c.details["discrepancy_flagged"] = flagged;
  return c;
}

}  // namespace

const std::vector<Entry>& suite() {
  static const std::vector<Entry> entries = {
      {1, "clairaut_h", clairaut_h},          {2, "clairaut_F", clairaut_F},
      {3, "momentum", momentum},              {4, "navigation", navigation},
      {5, "meeting_point", meeting},          {6, "length_order", length_order},
      {7, "vertex_distance", vertex_distance}, {8, "ode_quadrature", ode_quadrature},
      {9, "jacobi_pole", jacobi_pole},        {10, "cut_locus", cut_locus_check},
      {11, "embedding", embedding},           {12, "non_geodesy", non_geodesy},
      {13, "corollary_report", corollary},
  };
  return entries;
}

std::vector<Check> run(const Options& options, const std::vector<int>& only) {
  std::vector<Check> out;
  for (const Entry& e : suite()) {
    if (!only.empty() && std::find(only.begin(), only.end(), e.id) == only.end()) continue;
    try {
      out.push_back(e.run(options));
    } catch (const std::exception& ex) {
      Check c;
      c.id = e.id;
      c.key = e.key;
      c.title = "raised an error";
      c.value = std::numeric_limits<double>::quiet_NaN();
      c.details = {{"error", ex.what()}};
      out.push_back(c);
    }
  }
  return out;
}

std::string summary_line(const Check& c) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s %02d %-17s ", c.passed ? "PASS" : "FAIL", c.id, c.key.c_str());
  std::string line = buf + c.title + ": " + io::fmt(c.value);
  if (!c.relation.empty()) {
    std::snprintf(buf, sizeof buf, " (%s %.3g)", c.relation.c_str(), c.threshold);
    line += buf;
  }
  if (c.details.is_object() && c.details.contains("error"))
    line += " error: " + c.details["error"].get<std::string>();
  return line;
}

io::json to_json(const Check& c) {
  return {{"id", c.id},         {"key", c.key},           {"title", c.title},
          {"passed", c.passed}, {"value", c.value},       {"relation", c.relation},
          {"threshold", c.threshold}, {"details", c.details}};
}

}  // namespace randers::verify
