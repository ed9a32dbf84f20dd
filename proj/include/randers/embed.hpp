#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "randers/geodesics.hpp"
#include "randers/profile.hpp"
#include "randers/zermelo.hpp"

namespace randers {

using Vec3 = std::array<double, 3>;

/// Point of R^3; embedded points live in the cylinder x^2 + y^2 < 1/mu^2.
struct MinkowskiPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Randers data of the rotational wind (-mu y, mu x, 0) over the Euclidean
/// metric of R^3, at one point.
struct MinkowskiRanders {
  double mu = 0.0;
  double lambda_t = 1.0;  // 1 - mu^2 (x^2 + y^2)
  std::array<Vec3, 3> a_t{};
  Vec3 b_t{};
};

/// Throws domain when the point is not strictly inside the cylinder.
MinkowskiRanders minkowski_randers(double mu, const MinkowskiPoint& x);

struct FTilde {
  double alpha = 0.0;
  double beta = 0.0;
  double F = 0.0;
};
FTilde f_tilde_parts(double mu, const MinkowskiPoint& x, const Vec3& Y);
double eval_F_tilde(double mu, const MinkowskiPoint& x, const Vec3& Y);

/// Embedding (r, theta) -> (m cos theta, m sin theta, z(r)) with
/// z(r) = int_0^r sqrt(1 - m'^2). Embeddability (|m'| <= 1) is checked once on
/// a grid of 10^4 + 1 points over [0, r_max]; points beyond the first
/// violation are rejected with not_embeddable.
class Embedding {
 public:
  explicit Embedding(Profile p, double tol = 1e-10);

  const Profile& profile() const { return p_; }
  /// Largest radius up to which |m'| <= 1 holds on the grid.
  double embeddable_radius() const { return r_ok_; }
  bool fully_embeddable() const { return r_ok_ >= p_.r_max(); }

  double z(double r) const;
  double dz(double r) const;  // sqrt(1 - m'^2)

  MinkowskiPoint point(const SurfacePoint& q) const;
  Vec3 pushforward(const SurfacePoint& q, const Tangent& v) const;

 private:
  void require(double r) const;

  Profile p_;
  double tol_;
  double r_ok_ = 0.0;
  // z on a coarse table, refined by quadrature from the nearest node.
  std::vector<double> z_nodes_;
  double z_step_ = 0.0;
};

MinkowskiPoint embed_point(const Profile& p, const SurfacePoint& q);
Vec3 pushforward(const Profile& p, const SurfacePoint& q, const Tangent& v);

/// |F(q, v) - F~(phi(q), phi_* v)|.
double pullback_check(const Embedding& e, const SurfacePoint& q, const Tangent& v);

struct PullbackReport {
  std::size_t samples = 0;
  double max_residual = 0.0;
  double mu = 0.0;
  std::string profile;
  double r_lo = 0.0, r_hi = 0.0;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  bool passed = false;
};

/// Random points with r uniform in [r_lo, r_hi], theta in [0, 2 pi) and
/// directions of random h-angle and h-length in [0.1, 10].
PullbackReport pullback_batch(const Embedding& e, std::size_t samples, std::uint64_t seed,
                              double r_lo, double r_hi, double tol = 1e-9);

/// Coefficients of the pull-back of a~ under the map with z = r, compared
/// with the Randers a-metric (a12 vanishes for both).
struct HeightMapCheck {
  double r = 0.0;
  double a11 = 0.0;
  double a22 = 0.0;
  double pulled_a11 = 0.0;   // (1 + m'^2) / lambda
  double pulled_a22 = 0.0;
  double arclength_a11 = 0.0;  // same pull-back with z = z(r)
  double max_residual = 0.0;   // over the grid of the batch variant
  bool isometric = false;
};
HeightMapCheck height_map_check(const Embedding& e, double r);
HeightMapCheck height_map_check(const Embedding& e, const std::vector<double>& radii);

struct Mesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<std::size_t, 3>> faces;  // 0-based, counter-clockwise seen from outside
};

/// Triangulated surface over [0, r_top] x [0, 2 pi). Normals point away
/// from the axis of revolution.
Mesh embed_mesh(const Embedding& e, double r_top, std::size_t n_r, std::size_t n_theta);

/// Unnormalized face normal (b - a) x (c - a).
Vec3 face_normal(const Mesh& mesh, std::size_t face);

/// Embedded polyline of a path at its samples.
std::vector<Vec3> embed_path(const Embedding& e, const GeodesicPath& path);

/// F~-length of the embedded path: Gauss-Legendre on every sample interval
/// with the pushed-forward dense velocity.
double f_tilde_length(const Embedding& e, const GeodesicPath& path);

/// Largest distance of the polyline vertices from the chord through its ends.
double max_chord_deviation(const std::vector<Vec3>& polyline);

}  // namespace randers
