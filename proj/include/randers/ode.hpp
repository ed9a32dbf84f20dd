#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace randers::ode {

template <std::size_t N>
using Vec = std::array<double, N>;

struct Tolerance {
  double atol = 1e-10;
  double rtol = 1e-10;
};

template <std::size_t N>
struct TrialStep {
  Vec<N> y{};
  Vec<N> dydt{};  // derivative at the new point (first-same-as-last)
  double error = 0.0;  // scaled error norm; accept iff <= 1
};

/// One Dormand-Prince 5(4) trial step from (t, y) with derivative k1.
template <std::size_t N, class Rhs>
TrialStep<N> dopri5_trial(const Rhs& f, double t, const Vec<N>& y,
                          const Vec<N>& k1, double h, const Tolerance& tol) {
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                   a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                   b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  Vec<N> tmp;
  auto stage = [&](auto&& combine) {
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * combine(i);
  };
  stage([&](std::size_t i) { return a21 * k1[i]; });
  const Vec<N> k2 = f(t + c2 * h, tmp);
  stage([&](std::size_t i) { return a31 * k1[i] + a32 * k2[i]; });
  const Vec<N> k3 = f(t + c3 * h, tmp);
  stage([&](std::size_t i) { return a41 * k1[i] + a42 * k2[i] + a43 * k3[i]; });
  const Vec<N> k4 = f(t + c4 * h, tmp);
  stage([&](std::size_t i) {
    return a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i];
  });
  const Vec<N> k5 = f(t + c5 * h, tmp);
  stage([&](std::size_t i) {
    return a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i];
  });
  const Vec<N> k6 = f(t + h, tmp);

  TrialStep<N> out;
  for (std::size_t i = 0; i < N; ++i)
    out.y[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                           b6 * k6[i]);
  out.dydt = f(t + h, out.y);
  double norm = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double err = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                            e6 * k6[i] + e7 * out.dydt[i]);
    const double scale =
        tol.atol + tol.rtol * std::max(std::abs(y[i]), std::abs(out.y[i]));
    norm = std::max(norm, std::abs(err) / scale);
  }
  out.error = norm;
  return out;
}

/// Step-size update for an order-5 pair with safety factor 0.9.
inline double next_step(double h, double error) {
  const double factor =
      error == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(error, -0.2), 0.2, 5.0);
  return h * factor;
}

/// Cubic Hermite interpolation on [t0, t1] from values and slopes.
inline double hermite(double t0, double t1, double y0, double y1, double d0,
                      double d1, double t) {
  const double h = t1 - t0;
  const double u = (t - t0) / h;
  const double u2 = u * u, u3 = u2 * u;
  return (2 * u3 - 3 * u2 + 1) * y0 + (u3 - 2 * u2 + u) * h * d0 +
         (-2 * u3 + 3 * u2) * y1 + (u3 - u2) * h * d1;
}

}  // namespace randers::ode
