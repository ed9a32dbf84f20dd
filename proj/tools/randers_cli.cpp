// Command-line front end. Every command prints a JSON report (config echo
// and engine version included) on stdout; --out DIR writes the artifacts
// in the requested --format.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "randers/conjugate.hpp"
#include "randers/embed.hpp"
#include "randers/error.hpp"
#include "randers/geodesics.hpp"
#include "randers/io.hpp"
#include "randers/measure.hpp"
#include "randers/verify.hpp"

namespace fs = std::filesystem;
using namespace randers;
using io::json;

namespace {

constexpr int kUsage = 1;
constexpr int kDomain = 2;
constexpr int kVerification = 3;

struct Global {
  std::string surface;
  std::optional<double> mu;
  double tol_ode = 1e-10;
  double tol_quad = 1e-10;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
};

json config_json(const Global& g, const std::string& command, const Profile& p, json params) {
  json c;
  c["command"] = command;
  c["surface_file"] = g.surface.empty() ? json(nullptr) : json(g.surface);
  c["surface"] = io::surface_json(p);
  c["tol_ode"] = g.tol_ode;
  c["tol_quad"] = g.tol_quad;
  c["seed"] = g.seed;
  c["out"] = g.out.empty() ? json(nullptr) : json(g.out);
  c["format"] = g.format;
  c["params"] = std::move(params);
  return c;
}

Profile load_profile(const Global& g) {
  Profile p = g.surface.empty() ? make_paraboloid(1.0) : io::load_surface(g.surface);
  if (g.mu) p = p.with_mu(*g.mu);
  return p;
}

void require_bounded(const Profile& p) {
  const std::vector<double> grid = radius_grid(p.r_max(), p.r_max() / 4000.0);
  const double margin = boundedness_margin(p, grid);
  if (!(margin > 0.0))
    throw Error(ErrorKind::metric_degenerate,
                "mu m(r) reaches 1 on [0, r_max]: the wind is not a mild breeze (margin " +
                    io::fmt(margin) + ")");
}

IntegrateOptions ode(const Global& g) {
  IntegrateOptions o;
  o.tol = g.tol_ode;
  return o;
}

void emit(const json& report) { std::cout << io::dump(report) << '\n'; }

std::string obj_comment(const json& env) {
  return std::string("randers ") + io::engine_version() + " config " + io::dump(env["config"], 0);
}

SurfacePoint point_of(const std::vector<double>& v) { return {v.at(0), v.at(1)}; }

// ---------------------------------------------------------------- commands

int cmd_info(const Global& g) {
  const Profile p = load_profile(g);
  json env = io::envelope(config_json(g, "info", p, json::object()));
  const std::vector<double> grid = radius_grid(p.r_max(), p.r_max() / 2000.0);
  const VonMangoldtVerdict vm = is_von_mangoldt(p, grid);
  const double margin = boundedness_margin(p, grid);
  json table = json::array();
  for (double r : linspace(0.0, p.r_max(), 11))
    table.push_back({{"r", r}, {"m", p.m(r)}, {"m1", p.m1(r)}, {"G", gauss_curvature(p, r)}});
  const Embedding e(p);
  json res;
  res["samples"] = table;
  res["von_mangoldt"] = vm.holds;
  res["von_mangoldt_violation_r"] = vm.violation_index ? json(grid[*vm.violation_index]) : json(nullptr);
  res["geodesic_parallels"] = geodesic_parallels(p, grid);
  res["boundedness_margin"] = margin;
  res["max_m"] = max_warp(p);
  res["m_increasing"] = warp_increasing(p);
  res["embeddable_radius"] = e.embeddable_radius();
  res["metric_degenerate"] = !(margin > 0.0);
  env["result"] = res;
  emit(env);
  if (!(margin > 0.0)) {
    std::cerr << "error (MetricDegenerate): mu m(r) >= 1 somewhere on [0, r_max]\n";
    return kDomain;
  }
  return 0;
}

struct GeodesicArgs {
  std::vector<double> start{1.0, 0.0};
  double heading = 0.0;
  double length = 10.0;
  bool embed = false;
  bool figure = false;
};

int cmd_geodesic(const Global& g, const GeodesicArgs& a) {
  const Profile p = load_profile(g);
  require_bounded(p);
  const IntegrateOptions o = ode(g);
  json params = {{"start", a.start}, {"heading", a.heading}, {"length", a.length},
                 {"embed", a.embed}, {"figure", a.figure}};
  json env = io::envelope(config_json(g, "geodesic", p, params));
  const SurfacePoint q = point_of(a.start);

  // The figure preset: the meridian through q and four twisted meridians
  // at pi/4 spacing, all leaving the vertex region outward.
  std::vector<std::pair<std::string, GeodesicPath>> paths;
  if (a.figure) {
    paths.emplace_back("meridian", integrate_h(p, h_unit_state(p, {q.r, q.theta}, 0.0), a.length, o));
    for (int k = 0; k < 4; ++k) {
      const SurfacePoint qk{q.r, q.theta + k * std::numbers::pi / 4.0};
      paths.emplace_back("twisted_" + std::to_string(k), twisted_meridian(p, qk, a.length, true, o));
    }
  } else {
    const GeodesicPath h = integrate_h(p, h_unit_state(p, q, a.heading), a.length, o);
    paths.emplace_back("h", h);
    paths.emplace_back("F", twist(h, p.mu()));
  }

  json res = json::object();
  for (const auto& [name, path] : paths) {
    json meta = io::path_json(path, o);
    meta["self_intersections"] = count_self_intersections(path);
    if (path.tag == MetricTag::F) {
      meta["f_unit_residual"] = f_unit_residual(p, path);
      meta["f_length"] = f_length(p, path);
    } else {
      meta["h_length"] = h_length(p, path);
    }
    const auto& last = path.samples.back();
    meta["end"] = {last.s, last.state.r, last.state.theta};
    res[name] = meta;
  }
  env["result"] = res;

  if (!g.out.empty()) {
    const fs::path dir = g.out;
    std::vector<std::vector<Vec3>> curves;
    std::optional<Embedding> e;
    if (a.embed || g.format == "obj") e.emplace(p, g.tol_quad);
    for (const auto& [name, path] : paths) {
      if (g.format == "csv") {
        io::write_file(dir / (name + ".csv"), io::path_csv(path));
        json side = io::envelope(env["config"]);
        side["path"] = res[name];
        io::write_file(dir / (name + ".json"), io::dump(side));
      } else if (g.format == "json") {
        json full = io::envelope(env["config"]);
        full["path"] = res[name];
        json rows = json::array();
        for (const PathSample& ps : path.samples)
          rows.push_back({ps.s, ps.state.r, ps.state.theta, ps.state.dr, ps.state.dtheta});
        full["columns"] = {"s", "r", "theta", "dr", "dtheta"};
        full["samples"] = rows;
        io::write_file(dir / (name + ".json"), io::dump(full));
      }
      if (e) {
        curves.push_back(embed_path(*e, path));
        if (a.embed && g.format != "obj")
          io::write_file(dir / (name + "_3d.csv"), io::polyline_csv(curves.back()));
      }
    }
    if (e && (a.embed || g.format == "obj")) {
      double r_top = 0.0;
      for (const auto& [name, path] : paths)
        for (const PathSample& ps : path.samples) r_top = std::max(r_top, std::abs(ps.state.r));
      r_top = std::min(r_top, e->embeddable_radius());
      io::write_file(dir / "paths.obj", io::polylines_obj(curves, obj_comment(env)));
      if (r_top > 0.0)
        io::write_file(dir / "surface.obj", io::mesh_obj(embed_mesh(*e, r_top, 60, 96), obj_comment(env)));
    }
  }
  emit(env);
  return 0;
}

struct DistanceArgs {
  std::vector<double> from{1.0, 0.0};
  std::vector<double> to{2.0, 2.0};
  double tol = 1e-9;
};

int cmd_distance(const Global& g, const DistanceArgs& a) {
  const Profile p = load_profile(g);
  require_bounded(p);
  json params = {{"from", a.from}, {"to", a.to}, {"tol_root", a.tol}};
  json env = io::envelope(config_json(g, "distance", p, params));
  const SurfacePoint q1 = point_of(a.from), q2 = point_of(a.to);
  DistanceOptions opt;
  opt.tol = a.tol;
  const DistanceReport fwd = distance_F(p, q1, q2, opt);
  const DistanceReport bwd = distance_F(p, q2, q1, opt);
  const HDistance dh = distance_h(p, q1, q2);
  json res;
  res["from"] = io::to_json(q1);
  res["to"] = io::to_json(q2);
  res["d_F"] = io::to_json(fwd);
  res["d_F_reverse"] = io::to_json(bwd);
  res["d_h"] = {{"distance", dh.distance}, {"nu", dh.nu}, {"via_turning", dh.via_turning},
                {"evaluations", dh.evaluations}};
  res["asymmetry"] = fwd.distance - bwd.distance;
  env["result"] = res;
  if (!g.out.empty()) io::write_file(fs::path(g.out) / "distance.json", io::dump(env));
  emit(env);
  return 0;
}

struct CutArgs {
  std::vector<double> q{1.0, 0.0};
  std::size_t samples = 41;
  std::optional<double> s_max;
  double check_offset = 1.0;
  std::size_t headings = 720;
};

int cmd_cutlocus(const Global& g, const CutArgs& a) {
  const Profile p = load_profile(g);
  require_bounded(p);
  json params = {{"q", a.q}, {"samples", a.samples},
                 {"s_max", a.s_max ? json(*a.s_max) : json(nullptr)},
                 {"check_offset", a.check_offset}, {"headings", a.headings}};
  json env = io::envelope(config_json(g, "cutlocus", p, params));
  const SurfacePoint q = point_of(a.q);
  const CutArc arc = cut_locus(p, q, a.s_max, a.samples);
  const SurfacePoint y = cut_point(p, q, arc.c + a.check_offset);
  const CutPointCheck chk = verify_cut_point(p, q, y, 2, 1e-6, a.headings);
  env["result"] = {{"cut_arc", io::to_json(arc)}, {"check", io::to_json(chk)}};
  if (!g.out.empty()) {
    const fs::path dir = g.out;
    if (g.format == "csv") {
      io::write_file(dir / "cut_arc.csv", io::cut_arc_csv(arc));
      json side = io::envelope(env["config"]);
      side["check"] = env["result"]["check"];
      side["c"] = arc.c;
      io::write_file(dir / "cut_arc.json", io::dump(side));
    } else if (g.format == "obj") {
      const Embedding e(p, g.tol_quad);
      std::vector<Vec3> curve;
      for (const CutSample& s : arc.samples)
        if (s.r <= e.embeddable_radius()) {
          const MinkowskiPoint x = e.point({s.r, s.theta});
          curve.push_back({x.x, x.y, x.z});
        }
      io::write_file(dir / "cut_arc.obj", io::polylines_obj({curve}, obj_comment(env)));
    } else {
      io::write_file(dir / "cut_arc.json", io::dump(env));
    }
  }
  emit(env);
  if (!chk.passed) {
    std::cerr << "error (VerificationFailed): the checked cut point does not have two minimizers\n";
    return kVerification;
  }
  return 0;
}

struct VerifyArgs {
  std::vector<int> only;
  bool quiet = false;
};

int cmd_verify(const Global& g, const VerifyArgs& a) {
  verify::Options o;
  o.seed = g.seed;
  o.tol_ode = g.tol_ode;
  o.mu = g.mu.value_or(1.0);
  if (!g.surface.empty())
    throw Error(ErrorKind::invalid_parameter,
                "verify runs the fixed paraboloid suite; use --mu to change the wind");
  const Profile p = make_paraboloid(o.mu);
  json env = io::envelope(config_json(g, "verify", p, {{"only", a.only}}));
  const std::vector<verify::Check> checks = verify::run(o, a.only);
  bool all = true;
  json list = json::array();
  for (const verify::Check& c : checks) {
    all = all && c.passed;
    list.push_back(verify::to_json(c));
    if (!a.quiet) std::cerr << verify::summary_line(c) << '\n';
  }
  env["result"] = {{"passed", all}, {"checks", list}};
  if (!g.out.empty()) io::write_file(fs::path(g.out) / "verify.json", io::dump(env));
  emit(env);
  return all ? 0 : kVerification;
}

int exit_code(ErrorKind k) {
  return k == ErrorKind::verification_failed ? kVerification : kDomain;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randers rotational surfaces: geodesics, distances, cut locus and embedding checks"};
  app.set_version_flag("--version", std::string("randers ") + io::engine_version());
  app.require_subcommand(1);
  app.fallthrough();

  Global g;
  app.add_option("--surface", g.surface, "surface definition (JSON)")->check(CLI::ExistingFile);
  app.add_option("--mu", g.mu, "override the wind strength")->check(CLI::NonNegativeNumber);
  app.add_option("--tol-ode", g.tol_ode, "ODE tolerance")->check(CLI::PositiveNumber);
  app.add_option("--tol-quad", g.tol_quad, "quadrature tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "seed for randomized suites");
  app.add_option("--out", g.out, "output directory");
  app.add_option("--format", g.format, "artifact format")->check(CLI::IsMember({"csv", "json", "obj"}));

  auto* info = app.add_subcommand("info", "surface report");

  GeodesicArgs ga;
  auto* geo = app.add_subcommand("geodesic", "h-geodesic and its F-twist");
  geo->add_option("--start", ga.start, "start point r theta")->expected(2);
  geo->add_option("--heading", ga.heading, "h-angle of the pre-image with d/dr");
  geo->add_option("--length", ga.length, "parameter length")->check(CLI::PositiveNumber);
  geo->add_flag("--embed", ga.embed, "also write 3D polylines and the surface mesh");
  geo->add_flag("--figure", ga.figure, "meridian plus four twisted meridians at pi/4 spacing");

  DistanceArgs da;
  auto* dist = app.add_subcommand("distance", "forward Finsler distance");
  dist->add_option("--from", da.from, "r theta")->expected(2)->required();
  dist->add_option("--to", da.to, "r theta")->expected(2)->required();
  dist->add_option("--tol-root", da.tol, "root tolerance")->check(CLI::PositiveNumber);

  CutArgs ca;
  auto* cut = app.add_subcommand("cutlocus", "F-cut locus of a point");
  cut->add_option("--q", ca.q, "r theta")->expected(2);
  cut->add_option("--samples", ca.samples, "points along the arc")->check(CLI::Range(2, 100000));
  cut->add_option("--s-max", ca.s_max, "last parameter along tau_q");
  cut->add_option("--check-offset", ca.check_offset, "checked point sits at c + offset")
      ->check(CLI::PositiveNumber);
  cut->add_option("--headings", ca.headings, "fan size for the minimizer search")
      ->check(CLI::Range(16, 100000));

  VerifyArgs va;
  auto* ver = app.add_subcommand("verify", "acceptance suite");
  ver->add_option("--only", va.only, "check ids")->check(CLI::Range(1, 13));
  ver->add_flag("--quiet", va.quiet, "no summary lines on stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*info) return cmd_info(g);
    if (*geo) return cmd_geodesic(g, ga);
    if (*dist) return cmd_distance(g, da);
    if (*cut) return cmd_cutlocus(g, ca);
    if (*ver) return cmd_verify(g, va);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomain;
  }
  return kUsage;
}
