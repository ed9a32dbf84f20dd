#include "randers/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "randers/error.hpp"

namespace randers::io {

namespace {

void dump_into(std::string& out, const json& j, int indent, int depth) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? fmt(x) : "null";
      return;
    }
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad;
        out += json(it.key()).dump();
        out += indent > 0 ? ": " : ":";
        dump_into(out, it.value(), indent, depth + 1);
      }
      out += nl;
      out += close_pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line; they are mostly coordinates.
      bool flat = true;
      for (const json& e : j) flat = flat && !e.is_structured();
      out += "[";
      if (!flat) out += nl;
      bool first = true;
      for (const json& e : j) {
        if (!first) {
          out += ",";
          out += flat ? (indent > 0 ? " " : "") : nl;
        }
        first = false;
        if (!flat) out += pad;
        dump_into(out, e, indent, depth + 1);
      }
      if (!flat) out += nl + close_pad;
      out += "]";
      return;
    }
    default:
      out += j.dump();
  }
}

double number(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number())
    throw Error(ErrorKind::parse, std::string("surface field '") + key + "' must be a number");
  return j[key].get<double>();
}

std::optional<std::string> text(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  if (!j[key].is_string())
    throw Error(ErrorKind::parse, std::string("surface field '") + key + "' must be a string");
  return j[key].get<std::string>();
}

}  // namespace

const char* engine_version() { return RANDERS_VERSION; }

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s = buf;
  // Keep integral values recognisably floating point.
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

std::string dump(const json& j, int indent) {
  std::string out;
  dump_into(out, j, indent, 0);
  return out;
}

json envelope(const json& config) {
  json j;
  j["engine"] = "randers";
  j["version"] = engine_version();
  j["config"] = config;
  return j;
}

Profile parse_surface(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::parse, "surface definition must be a JSON object");
  static const char* known[] = {"kind", "name", "mu", "r_max", "m", "m1", "m2"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) throw Error(ErrorKind::parse, "unknown surface field '" + it.key() + "'");
  }
  const std::string kind = text(j, "kind").value_or("paraboloid");
  const double mu = number(j, "mu", 1.0);
  const double r_max = number(j, "r_max", 20.0);
  if (kind == "paraboloid") {
    if (j.contains("m") || j.contains("m1") || j.contains("m2"))
      throw Error(ErrorKind::parse, "paraboloid surfaces take no expressions");
    return make_paraboloid(mu, r_max);
  }
  if (kind == "custom") {
    const auto m = text(j, "m");
    if (!m) throw Error(ErrorKind::parse, "custom surface needs an expression 'm'");
    return Profile::from_expressions(*m, text(j, "m1"), text(j, "m2"), mu, r_max,
                                     text(j, "name").value_or("custom"));
  }
  throw Error(ErrorKind::parse, "unknown surface kind '" + kind + "'");
}

Profile load_surface(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorKind::parse, "cannot open surface file " + file.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::parse, "surface file " + file.string() + ": " + e.what());
  }
  return parse_surface(j);
}

json surface_json(const Profile& p) {
  const auto& d = p.definition();
  json j;
  j["kind"] = d.kind == ProfileKind::paraboloid ? "paraboloid" : "custom";
  j["name"] = d.name;
  j["mu"] = d.mu;
  j["r_max"] = d.r_max;
  if (!d.m_expr.empty()) j["m"] = d.m_expr;
  if (!d.m1_expr.empty()) j["m1"] = d.m1_expr;
  if (!d.m2_expr.empty()) j["m2"] = d.m2_expr;
  return j;
}

const char* to_string(MetricTag tag) { return tag == MetricTag::h ? "h" : "F"; }

const char* to_string(PathKind kind) {
  switch (kind) {
    case PathKind::meridian: return "meridian";
    case PathKind::twisted_meridian: return "twisted_meridian";
    case PathKind::parallel: return "parallel";
    case PathKind::generic: return "generic";
  }
  return "generic";
}

std::string path_csv(const GeodesicPath& path) {
  std::string out = "s,r,theta,dr,dtheta\n";
  for (const PathSample& ps : path.samples) {
    const GeodesicState& st = ps.state;
    out += fmt(ps.s) + ',' + fmt(st.r) + ',' + fmt(st.theta) + ',' + fmt(st.dr) + ',' +
           fmt(st.dtheta) + '\n';
  }
  return out;
}

json path_json(const GeodesicPath& path, const IntegrateOptions& options) {
  json j;
  j["nu"] = path.nu;
  j["metric_tag"] = to_string(path.tag);
  j["kind"] = to_string(path.kind);
  j["twist_mu"] = path.twist_mu;
  j["s_begin"] = path.samples.empty() ? 0.0 : path.s_begin();
  j["s_end"] = path.samples.empty() ? 0.0 : path.s_end();
  j["samples"] = path.samples.size();
  j["vertex_s"] = path.vertex_s ? json(*path.vertex_s) : json(nullptr);
  j["exited_domain"] = path.exited_domain;
  j["tolerances"] = {{"tol_ode", options.tol}, {"max_step", options.max_step}};
  j["quality"] = {{"max_unit_drift", path.quality.max_unit_drift},
                  {"max_clairaut_drift", path.quality.max_clairaut_drift},
                  {"accepted_steps", path.quality.accepted_steps},
                  {"rejected_steps", path.quality.rejected_steps}};
  return j;
}

json to_json(const SurfacePoint& q) { return json::array({q.r, q.theta}); }

json to_json(const ClairautReport& r) {
  return {{"nu", r.nu},
          {"samples", r.samples},
          {"max_h_residual", r.max_h_residual},
          {"max_F1_residual", r.max_F1_residual},
          {"max_F2_residual", r.max_F2_residual},
          {"max_momentum_residual", r.max_momentum_residual},
          {"max_inner_residual", r.max_inner_residual}};
}

json to_json(const DistanceReport& r) {
  return {{"distance", r.distance},       {"t_max", r.t_max},
          {"bracket", {r.bracket_lo, r.bracket_hi}},
          {"residual", r.residual},       {"iterations", r.iterations},
          {"dh_evaluations", r.dh_evaluations}};
}

json to_json(const ParallelLengths& r) {
  return {{"r0", r.r0},
          {"m0", r.m0},
          {"L_plus", r.L_plus},
          {"L_h", r.L_h},
          {"L_minus", r.L_minus},
          {"loop_plus_closed", r.loop_plus_closed},
          {"length_eq_plus", r.length_eq_plus},
          {"length_eq_minus", r.length_eq_minus},
          {"corollary_plus", r.corollary_plus},
          {"corollary_minus", r.corollary_minus},
          {"ratio_plus", r.ratio_plus},
          {"ratio_minus", r.ratio_minus},
          {"corollary_consistent", r.corollary_consistent}};
}

json to_json(const MeetingPoint& r) {
  return {{"s1", r.s1},
          {"s2", r.s2},
          {"common_length", r.common_length},
          {"closed_s1", r.closed_s1},
          {"closed_s2", r.closed_s2},
          {"closed_length", r.closed_length},
          {"rate_plus", r.rate_plus},
          {"rate_minus", r.rate_minus},
          {"max_deviation", r.max_deviation}};
}

json to_json(const CutArc& arc) {
  json j;
  j["q"] = to_json(arc.q);
  j["rho"] = arc.rho;
  j["c"] = arc.c;
  j["mu"] = arc.mu;
  json samples = json::array();
  for (const CutSample& s : arc.samples) samples.push_back({s.s, s.r, s.theta});
  j["samples"] = samples;
  json travel = json::array();
  for (const CutSample& s : arc.samples) travel.push_back(s.travel);
  j["travel"] = travel;
  json twisted = json::array();
  for (const CutSample& s : arc.twisted_samples) twisted.push_back({s.s, s.r, s.theta});
  j["twisted_samples"] = twisted;
  return j;
}

json to_json(const CutPointCheck& c) {
  auto hits = [](const std::vector<ShotHit>& v) {
    json a = json::array();
    for (const ShotHit& h : v)
      a.push_back({{"heading", h.heading}, {"length", h.length}, {"miss", h.miss},
                   {"crossing", h.crossing}});
    return a;
  };
  return {{"y", to_json(c.y)},
          {"distance", c.distance},
          {"expected", c.expected},
          {"minimizers", hits(c.minimizers)},
          {"hits", hits(c.hits)},
          {"length_gap", c.length_gap},
          {"passed", c.passed}};
}

json to_json(const PoleCertificate& c) {
  return {{"r_max", c.r_max},
          {"mu", c.mu},
          {"lower_bound", c.lower_bound},
          {"integral", c.integral},
          {"jacobi_max_deviation", c.jacobi_max_deviation},
          {"jacobi_min_value", c.jacobi_min_value},
          {"certified", c.certified}};
}

json to_json(const PullbackReport& r) {
  return {{"samples", r.samples}, {"max_residual", r.max_residual}, {"mu", r.mu},
          {"profile", r.profile}, {"r_range", {r.r_lo, r.r_hi}},    {"seed", r.seed},
          {"tol", r.tol},         {"passed", r.passed}};
}

json to_json(const HeightMapCheck& c) {
  return {{"r", c.r},
          {"a11", c.a11},
          {"a22", c.a22},
          {"pulled_a11_z_eq_r", c.pulled_a11},
          {"pulled_a22_z_eq_r", c.pulled_a22},
          {"pulled_a11_arclength", c.arclength_a11},
          {"max_residual", c.max_residual},
          {"isometric", c.isometric}};
}

std::string cut_arc_csv(const CutArc& arc) {
  std::string out = "s,r,theta\n";
  for (const CutSample& s : arc.samples) out += fmt(s.s) + ',' + fmt(s.r) + ',' + fmt(s.theta) + '\n';
  return out;
}

std::string mesh_obj(const Mesh& mesh, const std::string& comment) {
  std::ostringstream os;
  if (!comment.empty()) os << "# " << comment << '\n';
  for (const Vec3& v : mesh.vertices) os << "v " << fmt(v[0]) << ' ' << fmt(v[1]) << ' ' << fmt(v[2]) << '\n';
  for (const auto& f : mesh.faces) os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  return os.str();
}

std::string polylines_obj(const std::vector<std::vector<Vec3>>& curves,
                          const std::string& comment) {
  std::ostringstream os;
  if (!comment.empty()) os << "# " << comment << '\n';
  std::size_t base = 1;
  for (const auto& curve : curves) {
    for (const Vec3& v : curve) os << "v " << fmt(v[0]) << ' ' << fmt(v[1]) << ' ' << fmt(v[2]) << '\n';
    if (curve.size() >= 2) {
      os << 'l';
      for (std::size_t i = 0; i < curve.size(); ++i) os << ' ' << base + i;
      os << '\n';
    }
    base += curve.size();
  }
  return os.str();
}

std::string polyline_csv(const std::vector<Vec3>& curve) {
  std::string out = "x,y,z\n";
  for (const Vec3& v : curve) out += fmt(v[0]) + ',' + fmt(v[1]) + ',' + fmt(v[2]) + '\n';
  return out;
}

void write_file(const std::filesystem::path& file, const std::string& text) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error(ErrorKind::domain, "cannot write " + file.string());
  out << text;
  if (!out) throw Error(ErrorKind::domain, "write failed for " + file.string());
}

}  // namespace randers::io
