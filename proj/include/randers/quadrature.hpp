#pragma once

#include <functional>

namespace randers::quad {

/// Adaptive Gauss-Kronrod (31 point) integral of f over [a, b]. `tol` is
/// relative to the L1 norm of the integrand.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-13, double* error_estimate = nullptr);

/// Fixed 5-point Gauss-Legendre rule on [a, b].
double gauss_legendre5(const std::function<double(double)>& f, double a, double b);

/// Bisection for a sign change of f on [a, b]; returns the midpoint of the
/// final bracket once its width is below xtol.
double bisect(const std::function<double(double)>& f, double a, double b,
              double xtol, int max_iter = 200);

}  // namespace randers::quad
