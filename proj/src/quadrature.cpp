#include "randers/quadrature.hpp"

#include <array>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "randers/error.hpp"

namespace randers::quad {

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol, double* error_estimate) {
  if (a == b) {
    if (error_estimate) *error_estimate = 0.0;
    return 0.0;
  }
  // Boost 1.74 compares the unscaled error of each panel with a scaled
  // tolerance, which never terminates on short intervals. Mapping onto
  // [-1, 1] first keeps the top-level panel at unit scale.
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  auto g = [&](double x) { return half * f(mid + half * x); };
  double err = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      g, -1.0, 1.0, 15, tol, &err);
  if (error_estimate) *error_estimate = err;
  return value;
}

double gauss_legendre5(const std::function<double(double)>& f, double a, double b) {
  static constexpr std::array<double, 5> nodes = {
      0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640,
      0.9061798459386640};
  static constexpr std::array<double, 5> weights = {
      0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
      0.2369268850561891, 0.2369268850561891};
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    sum += weights[i] * f(mid + half * nodes[i]);
  return half * sum;
}

double bisect(const std::function<double(double)>& f, double a, double b,
              double xtol, int max_iter) {
  double fa = f(a);
  const double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa < 0.0) == (fb < 0.0))
    throw Error(ErrorKind::invalid_bracket, "bisection requires a sign change");
  for (int i = 0; i < max_iter && std::abs(b - a) > xtol; ++i) {
    const double mid = 0.5 * (a + b);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace randers::quad
