#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "randers/conjugate.hpp"
#include "randers/embed.hpp"
#include "randers/error.hpp"
#include "randers/io.hpp"
#include "randers/measure.hpp"
#include "randers/verify.hpp"

namespace py = pybind11;
using namespace randers;

namespace {

using Point = std::pair<double, double>;

SurfacePoint pt(const Point& p) { return {p.first, p.second}; }

// Goes through text so doubles keep all 17 digits and nulls survive.
py::object to_py(const io::json& j) { return py::module_::import("json").attr("loads")(io::dump(j, -1)); }

GeodesicPath trace(const Profile& p, const Point& start, double heading, double length,
                   const std::string& metric, double tol) {
  IntegrateOptions o;
  o.tol = tol;
  const SurfacePoint q = pt(start);
  if (metric == "h") return integrate_h(p, h_unit_state(p, q, heading), length, o);
  if (metric == "F") return integrate_F(p, q, f_unit_tangent(p, q, heading), length, o);
  throw Error(ErrorKind::invalid_parameter, "metric must be 'h' or 'F'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Randers metrics on rotational surfaces";

  static py::exception<Error> error(m, "RandersError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr e) {
    try {
      if (e) std::rethrow_exception(e);
    } catch (const Error& err) {
      py::object exc = py::handle(error.ptr())(std::string(to_string(err.kind())) + ": " + err.what());
      exc.attr("kind") = std::string(to_string(err.kind()));
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  m.attr("__version__") = io::engine_version();

  py::class_<Profile>(m, "Profile")
      .def_static("paraboloid", &make_paraboloid, py::arg("mu"), py::arg("r_max") = 20.0)
      .def_static(
          "from_expressions",
          [](const std::string& expr, double mu, double r_max, std::optional<std::string> m1,
             std::optional<std::string> m2, const std::string& name) {
            return Profile::from_expressions(expr, m1, m2, mu, r_max, name);
          },
          py::arg("m"), py::arg("mu"), py::arg("r_max"), py::arg("m1") = py::none(),
          py::arg("m2") = py::none(), py::arg("name") = "custom")
      .def_static("from_json", [](const std::string& text) { return io::parse_surface(io::json::parse(text)); })
      .def("m", &Profile::m)
      .def("m1", &Profile::m1)
      .def("m2", &Profile::m2)
      .def("curvature", [](const Profile& p, double r) { return gauss_curvature(p, r); })
      .def_property_readonly("mu", &Profile::mu)
      .def_property_readonly("r_max", &Profile::r_max)
      .def("to_dict", [](const Profile& p) { return to_py(io::surface_json(p)); })
      .def("__repr__", [](const Profile& p) { return "Profile(" + io::surface_json(p).dump() + ")"; });

  m.def(
      "geodesic",
      [](const Profile& p, Point start, double heading, double length, const std::string& metric,
         double tol) {
        const GeodesicPath g = trace(p, start, heading, length, metric, tol);
        std::vector<std::tuple<double, double, double, double, double>> rows;
        rows.reserve(g.samples.size());
        for (const PathSample& s : g.samples)
          rows.emplace_back(s.s, s.state.r, s.state.theta, s.state.dr, s.state.dtheta);
        IntegrateOptions o;
        o.tol = tol;
        py::dict out = to_py(io::path_json(g, o));
        out["samples"] = rows;
        return out;
      },
      py::arg("profile"), py::arg("start"), py::arg("heading"), py::arg("length"),
      py::arg("metric") = "h", py::arg("tol") = 1e-10,
      "Unit-speed geodesic; rows are (s, r, theta, dr, dtheta).");

  m.def(
      "clairaut_report",
      [](const Profile& p, Point start, double heading, double length, double tol) {
        return to_py(io::to_json(clairaut_verify(p, trace(p, start, heading, length, "F", tol))));
      },
      py::arg("profile"), py::arg("start"), py::arg("heading"), py::arg("length"), py::arg("tol") = 1e-10);

  m.def(
      "distance",
      [](const Profile& p, Point from, Point to, double tol) {
        DistanceOptions o;
        o.tol = tol;
        const HDistance dh = distance_h(p, pt(from), pt(to));
        io::json j;
        j["forward"] = io::to_json(distance_F(p, pt(from), pt(to), o));
        j["reverse"] = io::to_json(distance_F(p, pt(to), pt(from), o));
        j["d_h"] = dh.distance;
        return to_py(j);
      },
      py::arg("profile"), py::arg("source"), py::arg("target"), py::arg("tol") = 1e-9);

  m.def(
      "first_conjugate", [](const Profile& p, Point q) { return first_conjugate(p, pt(q)); },
      py::arg("profile"), py::arg("q"));

  m.def(
      "cut_locus",
      [](const Profile& p, Point q, std::size_t samples, std::optional<double> s_max) {
        return to_py(io::to_json(cut_locus(p, pt(q), s_max, samples)));
      },
      py::arg("profile"), py::arg("q"), py::arg("samples") = 41, py::arg("s_max") = py::none());

  m.def(
      "check_cut_point",
      [](const Profile& p, Point q, double offset, std::size_t headings) {
        const double c = first_conjugate(p, pt(q));
        return to_py(io::to_json(verify_cut_point(p, pt(q), cut_point(p, pt(q), c + offset), 2, 1e-6, headings)));
      },
      py::arg("profile"), py::arg("q"), py::arg("offset") = 1.0, py::arg("headings") = 720,
      "Counts the F-minimizers reaching the cut point at parameter c + offset.");

  m.def(
      "embed_point",
      [](const Profile& p, Point q) {
        const MinkowskiPoint x = Embedding(p).point(pt(q));
        return std::make_tuple(x.x, x.y, x.z);
      },
      py::arg("profile"), py::arg("q"));

  m.def(
      "pullback_batch",
      [](const Profile& p, std::size_t samples, std::uint64_t seed, double r_lo, double r_hi) {
        return to_py(io::to_json(pullback_batch(Embedding(p), samples, seed, r_lo, r_hi)));
      },
      py::arg("profile"), py::arg("samples") = 1000, py::arg("seed") = 1, py::arg("r_lo") = 0.1,
      py::arg("r_hi") = 5.0);

  m.def(
      "mesh_obj",
      [](const Profile& p, double r_top, std::size_t n_r, std::size_t n_theta) {
        return io::mesh_obj(embed_mesh(Embedding(p), r_top, n_r, n_theta));
      },
      py::arg("profile"), py::arg("r_top"), py::arg("n_r") = 40, py::arg("n_theta") = 64);

  m.def(
      "verify",
      [](std::uint64_t seed, double tol_ode, double mu, std::vector<int> only) {
        verify::Options o;
        o.seed = seed;
        o.tol_ode = tol_ode;
        o.mu = mu;
        py::list out;
        for (const verify::Check& c : verify::run(o, only)) out.append(to_py(verify::to_json(c)));
        return out;
      },
      py::arg("seed") = 1, py::arg("tol_ode") = 1e-10, py::arg("mu") = 1.0,
      py::arg("only") = std::vector<int>{});
}
