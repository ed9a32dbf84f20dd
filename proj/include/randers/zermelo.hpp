#pragma once

#include "randers/profile.hpp"

namespace randers {

/// Coefficients of the Randers metric F = alpha + beta obtained from the
/// navigation data (h, W = mu d/dtheta). a12 = b1 = 0 by rotational symmetry.
struct RandersData {
  double a11 = 1.0;
  double a22 = 0.0;
  double b2 = 0.0;
  double lambda = 1.0;  // 1 - mu^2 m^2
};

/// Tangent vector y = y1 d/dr + y2 d/dtheta.
struct Tangent {
  double y1 = 0.0;
  double y2 = 0.0;
};

/// Symmetric 2x2 matrix.
struct Sym2 {
  double g11 = 0.0;
  double g12 = 0.0;
  double g22 = 0.0;

  double quad(const Tangent& u, const Tangent& v) const {
    return g11 * u.y1 * v.y1 + g12 * (u.y1 * v.y2 + u.y2 * v.y1) + g22 * u.y2 * v.y2;
  }
};

/// Throws metric_degenerate when mu m(r) >= 1.
RandersData navigation_transform(const Profile& p, double r);

/// h(y, y) = y1^2 + m^2 y2^2.
double h_norm_sq(const Profile& p, double r, const Tangent& y);

/// F = sqrt(a_ij y^i y^j) + b_i y^i. Throws invalid_parameter for y = 0.
double eval_F(const Profile& p, const SurfacePoint& x, const Tangent& y);

/// F = (sqrt(lambda |y|^2 + W0^2) - W0) / lambda with |y|^2 = h(y,y) and
/// W0 = h(W, y). Evaluated in the rationalized form |y|^2 / (sqrt(..) + W0).
double eval_F_navigation(const Profile& p, const SurfacePoint& x, const Tangent& y);

/// g_ij(y) = (F/alpha)(a_ij - l_i l_j) + (l_i + b_i)(l_j + b_j), l_i = a_ij y^j / alpha.
/// The vertex is excluded (vertex_singular) because a22 vanishes there.
Sym2 fundamental_tensor(const Profile& p, const SurfacePoint& x, const Tangent& y);

/// g_y(y, v) / (|y|_{g_y} |v|_{g_y}).
double cos_F(const Profile& p, const SurfacePoint& x, const Tangent& y,
             const Tangent& v);

}  // namespace randers
