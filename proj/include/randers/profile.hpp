#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace randers {

enum class ProfileKind { paraboloid, custom };

/// Point in h-geodesic polar coordinates around the vertex p. theta is kept
/// unreduced; reduce with `reduce_angle` only when comparing or exporting.
struct SurfacePoint {
  double r = 0.0;
  double theta = 0.0;
};

/// Reduces an angle to [0, 2pi).
double reduce_angle(double theta);
/// Reduces an angle difference to (-pi, pi].
double wrap_angle(double delta);

struct WarpValues {
  double m = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
};

/// Warp function m(r) of the rotational metric dr^2 + m(r)^2 dtheta^2,
/// together with the rotational wind strength mu (W = mu d/dtheta).
///
/// Immutable and cheap to copy; the callables are shared.
class Profile {
 public:
  using Fn = std::function<double(double)>;

  /// Builds a profile from explicit m, m', m'' callables. Throws
  /// invalid_parameter unless m(0) = 0, m'(0) = 1, mu >= 0 and r_max > 0.
  static Profile custom(std::string name, Fn m, Fn m1, Fn m2, double mu,
                        double r_max);

  /// Parses expression strings over `r` and `mu`. Missing derivative
  /// expressions are obtained by differentiating the expression for m.
  static Profile from_expressions(const std::string& m,
                                  const std::optional<std::string>& m1,
                                  const std::optional<std::string>& m2,
                                  double mu, double r_max,
                                  std::string name = "custom");

  double m(double r) const { return impl_->m(r); }
  double m1(double r) const { return impl_->m1(r); }
  double m2(double r) const { return impl_->m2(r); }
  WarpValues values(double r) const { return {m(r), m1(r), m2(r)}; }

  double mu() const { return impl_->mu; }
  double r_max() const { return impl_->r_max; }
  ProfileKind kind() const { return impl_->kind; }
  const std::string& name() const { return impl_->name; }

  /// Radius below which curvature is evaluated through its vertex limit.
  double r_eps() const;

  /// Same geometry description with a different wind strength. For the
  /// paraboloid the warp function itself depends on mu and is rebuilt; for
  /// expression profiles the expressions are re-evaluated with the new mu.
  Profile with_mu(double mu) const;

  /// Serializable description (kind, mu, r_max and expressions if any).
  struct Definition {
    ProfileKind kind = ProfileKind::paraboloid;
    std::string name;
    double mu = 1.0;
    double r_max = 20.0;
    std::string m_expr, m1_expr, m2_expr;
  };
  const Definition& definition() const { return impl_->definition; }

 private:
  struct Impl {
    Fn m, m1, m2;
    double mu = 0.0;
    double r_max = 0.0;
    ProfileKind kind = ProfileKind::custom;
    std::string name;
    Definition definition;
  };
  explicit Profile(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  friend Profile make_paraboloid(double mu, double r_max);

  std::shared_ptr<const Impl> impl_;
};

/// m(r) = r / sqrt(mu^2 r^2 + 1), bounded by 1/mu.
Profile make_paraboloid(double mu, double r_max = 20.0);

/// G = -m''/m, with the vertex limit taken at r_eps.
double gauss_curvature(const Profile& p, double r);

struct VonMangoldtVerdict {
  bool holds = true;
  std::optional<std::size_t> violation_index;  // grid index i with G[i] > G[i-1]
};

/// Curvature non-increasing along the grid, up to 1e-10 slack per step.
VonMangoldtVerdict is_von_mangoldt(const Profile& p, std::span<const double> grid);

/// Radii of geodesic parallels (m'(r) = 0), bracketed on the grid and
/// refined by bisection to 1e-10.
std::vector<double> geodesic_parallels(const Profile& p,
                                       std::span<const double> grid);

/// min over the grid of 1 - mu m(r); positive iff the wind is a mild breeze.
double boundedness_margin(const Profile& p, std::span<const double> grid);

/// n evenly spaced points covering [a, b] inclusive.
std::vector<double> linspace(double a, double b, std::size_t n);

/// Radius grid with the given step from 0 to r_max inclusive.
std::vector<double> radius_grid(double r_max, double step);

}  // namespace randers
