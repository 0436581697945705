#pragma once

#include <functional>

namespace coinlab {

/// Closed interval [lo, hi] with lo < hi.
struct Interval {
  double lo;
  double hi;

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
};

/// Axis-aligned rectangle sx × sy in the (x1, x2) plane.
struct Rectangle {
  Interval sx;
  Interval sy;
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  long long evaluations = 0;
  bool converged = true;
};

using Integrand1D = std::function<double(double)>;
using Integrand2D = std::function<double(double, double)>;

/// Adaptive Gauss-Legendre integration (16-node panels, bisection refinement).
/// rel_tol must lie in [1e-14, 1e-2]. Non-convergence at max depth is
/// reported through the converged flag, never silently dropped.
QuadratureResult integrate_1d(const Integrand1D& f, Interval s,
                              double rel_tol = 1e-10);

/// Tensor-product Gauss-Legendre with adaptive quadrant subdivision.
QuadratureResult integrate_2d(const Integrand2D& f, Rectangle r,
                              double rel_tol = 1e-10);

/// Integral divided by the window width.
QuadratureResult mean_density(const Integrand1D& f, Interval s,
                              double rel_tol = 1e-10);

/// Integral divided by the window area.
QuadratureResult mean_density_2d(const Integrand2D& f, Rectangle r,
                                 double rel_tol = 1e-10);

}  // namespace coinlab
