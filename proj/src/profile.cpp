#include "randers/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "randers/error.hpp"
#include "randers/expression.hpp"

namespace randers {

double reduce_angle(double theta) {
  const double two_pi = 2.0 * std::numbers::pi;
  double t = std::fmod(theta, two_pi);
  if (t < 0.0) t += two_pi;
  return t >= two_pi ? 0.0 : t;
}

double wrap_angle(double delta) {
  const double two_pi = 2.0 * std::numbers::pi;
  double d = std::fmod(delta, two_pi);
  if (d > std::numbers::pi) d -= two_pi;
  if (d <= -std::numbers::pi) d += two_pi;
  return d;
}

namespace {

void check_common(double mu, double r_max) {
  if (!(mu >= 0.0) || !std::isfinite(mu))
    throw Error(ErrorKind::invalid_parameter, "wind strength mu must be >= 0");
  if (!(r_max > 0.0) || !std::isfinite(r_max))
    throw Error(ErrorKind::invalid_parameter, "r_max must be positive");
}

void check_vertex(const Profile::Fn& m, const Profile::Fn& m1,
                  const std::string& name) {
  const double m0 = m(0.0);
  const double m10 = m1(0.0);
  if (!(std::abs(m0) <= 1e-12) || !(std::abs(m10 - 1.0) <= 1e-12))
    throw Error(ErrorKind::invalid_parameter,
                "profile '" + name + "' must satisfy m(0)=0 and m'(0)=1 (got m(0)=" +
                    std::to_string(m0) + ", m'(0)=" + std::to_string(m10) + ")");
}

}  // namespace

Profile Profile::custom(std::string name, Fn m, Fn m1, Fn m2, double mu,
                        double r_max) {
  check_common(mu, r_max);
  if (!m || !m1 || !m2)
    throw Error(ErrorKind::invalid_parameter, "profile callables must be set");
  check_vertex(m, m1, name);
  auto impl = std::make_shared<Impl>();
  impl->m = std::move(m);
  impl->m1 = std::move(m1);
  impl->m2 = std::move(m2);
  impl->mu = mu;
  impl->r_max = r_max;
  impl->kind = ProfileKind::custom;
  impl->name = name;
  impl->definition = {ProfileKind::custom, std::move(name), mu, r_max, {}, {}, {}};
  return Profile(std::move(impl));
}

Profile Profile::from_expressions(const std::string& m,
                                  const std::optional<std::string>& m1,
                                  const std::optional<std::string>& m2,
                                  double mu, double r_max, std::string name) {
  const Expression em = Expression::parse(m);
  Fn fm = [em, mu](double r) { return em(r, mu); };
  Fn fm1, fm2;
  if (m1) {
    const Expression e = Expression::parse(*m1);
    fm1 = [e, mu](double r) { return e(r, mu); };
  } else {
    fm1 = [em, mu](double r) { return em.jet(r, mu).d1; };
  }
  if (m2) {
    const Expression e = Expression::parse(*m2);
    fm2 = [e, mu](double r) { return e(r, mu); };
  } else {
    fm2 = [em, mu](double r) { return em.jet(r, mu).d2; };
  }
  Profile p = custom(name, std::move(fm), std::move(fm1), std::move(fm2), mu, r_max);
  auto impl = std::make_shared<Impl>(*p.impl_);
  impl->definition.m_expr = m;
  impl->definition.m1_expr = m1.value_or("");
  impl->definition.m2_expr = m2.value_or("");
  return Profile(std::move(impl));
}

Profile make_paraboloid(double mu, double r_max) {
  if (!(mu > 0.0) || !std::isfinite(mu))
    throw Error(ErrorKind::invalid_parameter, "paraboloid requires mu > 0");
  check_common(mu, r_max);
  const double mu2 = mu * mu;
  auto impl = std::make_shared<Profile::Impl>();
  impl->m = [mu2](double r) { return r / std::sqrt(mu2 * r * r + 1.0); };
  impl->m1 = [mu2](double r) { return std::pow(mu2 * r * r + 1.0, -1.5); };
  impl->m2 = [mu2](double r) {
    return -3.0 * mu2 * r * std::pow(mu2 * r * r + 1.0, -2.5);
  };
  impl->mu = mu;
  impl->r_max = r_max;
  impl->kind = ProfileKind::paraboloid;
  impl->name = "paraboloid";
  impl->definition = {ProfileKind::paraboloid, "paraboloid", mu, r_max, {}, {}, {}};
  return Profile(std::move(impl));
}

double Profile::r_eps() const { return 1e-6 * std::max(1.0, r_max()); }

Profile Profile::with_mu(double mu) const {
  const Definition& d = definition();
  if (d.kind == ProfileKind::paraboloid) return make_paraboloid(mu, d.r_max);
  if (d.m_expr.empty()) {
    auto impl = std::make_shared<Impl>(*impl_);
    check_common(mu, impl->r_max);
    impl->mu = mu;
    impl->definition.mu = mu;
    return Profile(std::move(impl));
  }
  auto opt = [](const std::string& s) {
    return s.empty() ? std::nullopt : std::optional<std::string>(s);
  };
  return from_expressions(d.m_expr, opt(d.m1_expr), opt(d.m2_expr), mu, d.r_max,
                          d.name);
}

double gauss_curvature(const Profile& p, double r) {
  if (r < 0.0) throw Error(ErrorKind::invalid_parameter, "radius must be >= 0");
  const double re = p.r_eps();
  if (r < re) r = re;
  return -p.m2(r) / p.m(r);
}

VonMangoldtVerdict is_von_mangoldt(const Profile& p, std::span<const double> grid) {
  if (grid.empty())
    throw Error(ErrorKind::invalid_parameter, "von Mangoldt grid is empty");
  VonMangoldtVerdict verdict;
  double previous = gauss_curvature(p, grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1]))
      throw Error(ErrorKind::invalid_parameter, "grid must be strictly increasing");
    const double g = gauss_curvature(p, grid[i]);
    if (g > previous + 1e-10) {
      verdict.holds = false;
      verdict.violation_index = i;
      return verdict;
    }
    previous = g;
  }
  return verdict;
}

std::vector<double> geodesic_parallels(const Profile& p,
                                       std::span<const double> grid) {
  std::vector<double> roots;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    double a = grid[i - 1], b = grid[i];
    double fa = p.m1(a), fb = p.m1(b);
    if (fa == 0.0) {
      if (i == 1 && a > 0.0) roots.push_back(a);
      continue;
    }
    if (fb == 0.0) {
      roots.push_back(b);
      continue;
    }
    if ((fa < 0.0) == (fb < 0.0)) continue;
    while (b - a > 1e-10) {
      const double mid = 0.5 * (a + b);
      const double fm = p.m1(mid);
      if ((fm < 0.0) == (fa < 0.0)) {
        a = mid;
        fa = fm;
      } else {
        b = mid;
      }
    }
    roots.push_back(0.5 * (a + b));
  }
  return roots;
}

double boundedness_margin(const Profile& p, std::span<const double> grid) {
  double margin = 1.0;
  for (double r : grid) margin = std::min(margin, 1.0 - p.mu() * p.m(r));
  return margin;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = a;
    return out;
  }
  for (std::size_t i = 0; i < n; ++i)
    out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return out;
}

std::vector<double> radius_grid(double r_max, double step) {
  const auto n = static_cast<std::size_t>(std::llround(r_max / step));
  return linspace(0.0, r_max, std::max<std::size_t>(n, 1) + 1);
}

}  // namespace randers
