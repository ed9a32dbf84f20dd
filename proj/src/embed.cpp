#include "randers/embed.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "randers/error.hpp"
#include "randers/quadrature.hpp"

namespace randers {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double quad_form(const std::array<Vec3, 3>& a, const Vec3& u, const Vec3& v) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += a[i][j] * u[i] * v[j];
  return s;
}

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double norm(const Vec3& a) { return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]); }

Vec3 as_vec(const MinkowskiPoint& x) { return {x.x, x.y, x.z}; }

}  // namespace

MinkowskiRanders minkowski_randers(double mu, const MinkowskiPoint& x) {
  if (!(mu >= 0.0)) throw Error(ErrorKind::invalid_parameter, "mu must be >= 0");
  MinkowskiRanders mr;
  mr.mu = mu;
  const double mu2 = mu * mu;
  mr.lambda_t = 1.0 - mu2 * (x.x * x.x + x.y * x.y);
  if (!(mr.lambda_t > 0.0))
    throw Error(ErrorKind::domain, "point lies outside the cylinder x^2 + y^2 < 1/mu^2");
  const double l2 = mr.lambda_t * mr.lambda_t;
  mr.a_t[0] = {(1.0 - mu2 * x.x * x.x) / l2, -mu2 * x.x * x.y / l2, 0.0};
  mr.a_t[1] = {-mu2 * x.x * x.y / l2, (1.0 - mu2 * x.y * x.y) / l2, 0.0};
  mr.a_t[2] = {0.0, 0.0, mr.lambda_t / l2};
  // b = -W / lambda with W = (-mu y, mu x, 0)
  mr.b_t = {mu * x.y / mr.lambda_t, -mu * x.x / mr.lambda_t, 0.0};
  return mr;
}

FTilde f_tilde_parts(double mu, const MinkowskiPoint& x, const Vec3& Y) {
  if (Y[0] == 0.0 && Y[1] == 0.0 && Y[2] == 0.0)
    throw Error(ErrorKind::invalid_parameter, "F~ is evaluated on nonzero vectors");
  const MinkowskiRanders mr = minkowski_randers(mu, x);
  FTilde f;
  f.alpha = std::sqrt(quad_form(mr.a_t, Y, Y));
  f.beta = mr.b_t[0] * Y[0] + mr.b_t[1] * Y[1] + mr.b_t[2] * Y[2];
  f.F = f.alpha + f.beta;
  return f;
}

double eval_F_tilde(double mu, const MinkowskiPoint& x, const Vec3& Y) {
  return f_tilde_parts(mu, x, Y).F;
}

Embedding::Embedding(Profile p, double tol) : p_(std::move(p)), tol_(tol) {
  const double r_max = p_.r_max();
  constexpr std::size_t kGrid = 10000;
  r_ok_ = r_max;
  for (std::size_t i = 0; i <= kGrid; ++i) {
    const double r = r_max * static_cast<double>(i) / kGrid;
    if (std::abs(p_.m1(r)) > 1.0) {
      r_ok_ = i == 0 ? 0.0 : r_max * static_cast<double>(i - 1) / kGrid;
      break;
    }
  }
  z_step_ = r_max / 400.0;
  z_nodes_.push_back(0.0);
  for (double a = 0.0; a + z_step_ <= r_ok_ * (1.0 + 1e-15); a += z_step_)
    z_nodes_.push_back(z_nodes_.back() +
                       quad::integrate([this](double t) { return dz(t); }, a, a + z_step_, tol_));
}

void Embedding::require(double r) const {
  if (r < 0.0) throw Error(ErrorKind::domain, "negative radius");
  if (r > r_ok_)
    throw Error(ErrorKind::not_embeddable,
                "|m'| exceeds 1 below r=" + std::to_string(r) +
                    "; (M,h) does not embed in Euclidean space there");
}

double Embedding::dz(double r) const {
  const double d = p_.m1(r);
  return std::sqrt(std::max(0.0, 1.0 - d * d));
}

double Embedding::z(double r) const {
  require(r);
  const auto k = std::min(z_nodes_.size() - 1, static_cast<std::size_t>(r / z_step_));
  const double a = static_cast<double>(k) * z_step_;
  if (r == a) return z_nodes_[k];
  return z_nodes_[k] + quad::integrate([this](double t) { return dz(t); }, a, r, tol_);
}

MinkowskiPoint Embedding::point(const SurfacePoint& q) const {
  const double m = p_.m(q.r);
  return {m * std::cos(q.theta), m * std::sin(q.theta), z(q.r)};
}

Vec3 Embedding::pushforward(const SurfacePoint& q, const Tangent& v) const {
  require(q.r);
  const double m = p_.m(q.r), m1 = p_.m1(q.r);
  const double c = std::cos(q.theta), s = std::sin(q.theta);
  return {m1 * c * v.y1 - m * s * v.y2, m1 * s * v.y1 + m * c * v.y2, dz(q.r) * v.y1};
}

MinkowskiPoint embed_point(const Profile& p, const SurfacePoint& q) {
  return Embedding(p).point(q);
}

Vec3 pushforward(const Profile& p, const SurfacePoint& q, const Tangent& v) {
  return Embedding(p).pushforward(q, v);
}

double pullback_check(const Embedding& e, const SurfacePoint& q, const Tangent& v) {
  const double F = eval_F(e.profile(), q, v);
  const double Ft = eval_F_tilde(e.profile().mu(), e.point(q), e.pushforward(q, v));
  return std::abs(F - Ft);
}

PullbackReport pullback_batch(const Embedding& e, std::size_t samples, std::uint64_t seed,
                              double r_lo, double r_hi, double tol) {
  if (!(r_lo > 0.0 && r_hi > r_lo))
    throw Error(ErrorKind::invalid_parameter, "need 0 < r_lo < r_hi");
  PullbackReport rep;
  rep.samples = samples;
  rep.mu = e.profile().mu();
  rep.profile = e.profile().name();
  rep.r_lo = r_lo;
  rep.r_hi = r_hi;
  rep.seed = seed;
  rep.tol = tol;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ur(r_lo, r_hi), ua(0.0, kTwoPi), ul(0.1, 10.0);
  for (std::size_t i = 0; i < samples; ++i) {
    const SurfacePoint q{ur(rng), ua(rng)};
    const double phi = ua(rng), len = ul(rng);
    const Tangent v{len * std::cos(phi), len * std::sin(phi) / e.profile().m(q.r)};
    rep.max_residual = std::max(rep.max_residual, pullback_check(e, q, v));
  }
  rep.passed = rep.max_residual <= tol;
  return rep;
}

HeightMapCheck height_map_check(const Embedding& e, double r) {
  const Profile& p = e.profile();
  HeightMapCheck out;
  out.r = r;
  const RandersData rd = navigation_transform(p, r);
  out.a11 = rd.a11;
  out.a22 = rd.a22;
  const double m = p.m(r), m1 = p.m1(r);
  // theta = 0 suffices by rotational symmetry
  const MinkowskiRanders mr = minkowski_randers(p.mu(), {m, 0.0, r});
  const Vec3 er{m1, 0.0, 1.0}, et{0.0, m, 0.0};
  out.pulled_a11 = quad_form(mr.a_t, er, er);
  out.pulled_a22 = quad_form(mr.a_t, et, et);
  const Vec3 er_arc{m1, 0.0, e.dz(r)};
  out.arclength_a11 = quad_form(mr.a_t, er_arc, er_arc);
  out.max_residual = std::max(std::abs(out.pulled_a11 - out.a11), std::abs(out.pulled_a22 - out.a22));
  out.isometric = out.max_residual <= 1e-9;
  return out;
}

HeightMapCheck height_map_check(const Embedding& e, const std::vector<double>& radii) {
  if (radii.empty()) throw Error(ErrorKind::invalid_parameter, "no radii given");
  HeightMapCheck worst;
  for (double r : radii) {
    const HeightMapCheck c = height_map_check(e, r);
    if (c.max_residual >= worst.max_residual) worst = c;
  }
  worst.isometric = worst.max_residual <= 1e-9;
  return worst;
}

Mesh embed_mesh(const Embedding& e, double r_top, std::size_t n_r, std::size_t n_theta) {
  if (n_r < 1 || n_theta < 3) throw Error(ErrorKind::invalid_parameter, "mesh too coarse");
  if (!(r_top > 0.0)) throw Error(ErrorKind::invalid_parameter, "r_top must be > 0");
  Mesh mesh;
  mesh.vertices.push_back(as_vec(e.point({0.0, 0.0})));  // apex
  for (std::size_t i = 1; i <= n_r; ++i) {
    const double r = r_top * static_cast<double>(i) / static_cast<double>(n_r);
    for (std::size_t j = 0; j < n_theta; ++j)
      mesh.vertices.push_back(
          as_vec(e.point({r, kTwoPi * static_cast<double>(j) / static_cast<double>(n_theta)})));
  }
  auto idx = [n_theta](std::size_t i, std::size_t j) { return 1 + (i - 1) * n_theta + j % n_theta; };
  // (theta step, then r step) gives e_theta x e_r, which points away from the axis.
  for (std::size_t j = 0; j < n_theta; ++j) mesh.faces.push_back({0, idx(1, j + 1), idx(1, j)});
  for (std::size_t i = 1; i < n_r; ++i)
    for (std::size_t j = 0; j < n_theta; ++j) {
      mesh.faces.push_back({idx(i, j), idx(i, j + 1), idx(i + 1, j)});
      mesh.faces.push_back({idx(i, j + 1), idx(i + 1, j + 1), idx(i + 1, j)});
    }
  return mesh;
}

Vec3 face_normal(const Mesh& mesh, std::size_t face) {
  const auto& f = mesh.faces.at(face);
  const Vec3& a = mesh.vertices[f[0]];
  return cross(sub(mesh.vertices[f[1]], a), sub(mesh.vertices[f[2]], a));
}

std::vector<Vec3> embed_path(const Embedding& e, const GeodesicPath& path) {
  std::vector<Vec3> out;
  out.reserve(path.samples.size());
  for (const PathSample& ps : path.samples)
    out.push_back(as_vec(e.point({std::abs(ps.state.r), ps.state.theta})));
  return out;
}

double f_tilde_length(const Embedding& e, const GeodesicPath& path) {
  const double mu = e.profile().mu();
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < path.samples.size(); ++i)
    total += quad::gauss_legendre5(
        [&](double s) {
          const GeodesicState st = path.at(s);
          const SurfacePoint q = st.point();
          return eval_F_tilde(mu, e.point(q), e.pushforward(q, st.velocity()));
        },
        path.samples[i].s, path.samples[i + 1].s);
  return total;
}

double max_chord_deviation(const std::vector<Vec3>& polyline) {
  if (polyline.size() < 3) return 0.0;
  const Vec3 a = polyline.front();
  const Vec3 d = sub(polyline.back(), a);
  const double len = norm(d);
  double worst = 0.0;
  for (const Vec3& v : polyline) {
    const double dist = len > 0.0 ? norm(cross(sub(v, a), d)) / len : norm(sub(v, a));
    worst = std::max(worst, dist);
  }
  return worst;
}

}  // namespace randers
