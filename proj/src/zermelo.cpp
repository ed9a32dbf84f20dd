#include "randers/zermelo.hpp"

#include <cmath>
#include <string>

#include "randers/error.hpp"

namespace randers {

namespace {

void require_nonzero(const Tangent& y) {
  if (y.y1 == 0.0 && y.y2 == 0.0)
    throw Error(ErrorKind::invalid_parameter, "tangent vector must be nonzero");
}

}  // namespace

RandersData navigation_transform(const Profile& p, double r) {
  const double m = p.m(r);
  const double wind = p.mu() * m;
  if (!(wind < 1.0))
    throw Error(ErrorKind::metric_degenerate,
                "wind is not a mild breeze at r=" + std::to_string(r) +
                    " (mu m = " + std::to_string(wind) + ")");
  const double lambda = 1.0 - wind * wind;
  return {1.0 / lambda, m * m / (lambda * lambda), -p.mu() * m * m / lambda, lambda};
}

double h_norm_sq(const Profile& p, double r, const Tangent& y) {
  const double m = p.m(r);
  return y.y1 * y.y1 + m * m * y.y2 * y.y2;
}

double eval_F(const Profile& p, const SurfacePoint& x, const Tangent& y) {
  require_nonzero(y);
  const RandersData d = navigation_transform(p, x.r);
  const double alpha = std::sqrt(d.a11 * y.y1 * y.y1 + d.a22 * y.y2 * y.y2);
  return alpha + d.b2 * y.y2;
}

double eval_F_navigation(const Profile& p, const SurfacePoint& x, const Tangent& y) {
  require_nonzero(y);
  const double m = p.m(x.r);
  const double wind = p.mu() * m;
  if (!(wind < 1.0))
    throw Error(ErrorKind::metric_degenerate, "wind is not a mild breeze");
  const double lambda = 1.0 - wind * wind;
  const double y_sq = h_norm_sq(p, x.r, y);
  const double w0 = p.mu() * m * m * y.y2;
  return y_sq / (std::sqrt(lambda * y_sq + w0 * w0) + w0);
}

Sym2 fundamental_tensor(const Profile& p, const SurfacePoint& x, const Tangent& y) {
  require_nonzero(y);
  if (x.r <= 0.0)
    throw Error(ErrorKind::vertex_singular,
                "fundamental tensor is undefined in polar coordinates at the vertex");
  const RandersData d = navigation_transform(p, x.r);
  const double alpha = std::sqrt(d.a11 * y.y1 * y.y1 + d.a22 * y.y2 * y.y2);
  const double F = alpha + d.b2 * y.y2;
  const double l1 = d.a11 * y.y1 / alpha;
  const double l2 = d.a22 * y.y2 / alpha;
  const double k = F / alpha;
  const double c1 = l1;
  const double c2 = l2 + d.b2;
  return {k * (d.a11 - l1 * l1) + c1 * c1, k * (-l1 * l2) + c1 * c2,
          k * (d.a22 - l2 * l2) + c2 * c2};
}

double cos_F(const Profile& p, const SurfacePoint& x, const Tangent& y,
             const Tangent& v) {
  require_nonzero(v);
  const Sym2 g = fundamental_tensor(p, x, y);
  return g.quad(y, v) / (std::sqrt(g.quad(y, y)) * std::sqrt(g.quad(v, v)));
}

}  // namespace randers
