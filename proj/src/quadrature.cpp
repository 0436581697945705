#include "coinlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace coinlab {
namespace {

// 16-point Gauss-Legendre rule on [-1, 1], positive abscissae.
constexpr int kHalfOrder = 8;
constexpr int kOrder = 2 * kHalfOrder;
constexpr double kAbscissa[kHalfOrder] = {
    0.0950125098376374401853193, 0.2816035507792589132304605,
    0.4580167776572273863424194, 0.6178762444026437484466718,
    0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542,
};
constexpr double kWeight[kHalfOrder] = {
    0.1894506104550684962853967, 0.1826034150449235888667637,
    0.1691565193950025381893121, 0.1495959888165767320815017,
    0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806,
};

struct GL16 {
  double t[kOrder];
  double w[kOrder];
};

constexpr GL16 make_gl16() {
  GL16 g{};
  for (int i = 0; i < kHalfOrder; ++i) {
    g.t[i] = -kAbscissa[kHalfOrder - 1 - i];
    g.w[i] = kWeight[kHalfOrder - 1 - i];
    g.t[kHalfOrder + i] = kAbscissa[i];
    g.w[kHalfOrder + i] = kWeight[i];
  }
  return g;
}

constexpr GL16 kRule = make_gl16();

constexpr int kMaxDepth = 60;
// Global per-call budget: rounding-noise-limited integrands (e.g. a nearly
// cancelled fermion density) never meet a relative tolerance anywhere, and
// without a cap the refinement tree grows without bound.
constexpr long long kMaxEvals = 500000;
constexpr double kAbsFloor = 1e-300;
constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_args(double lo, double hi, double rel_tol) {
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi))
    throw std::invalid_argument("quadrature: interval must satisfy lo < hi");
  if (!(rel_tol >= 1e-14 && rel_tol <= 1e-2))
    throw std::invalid_argument("quadrature: rel_tol out of [1e-14, 1e-2]");
}

struct PanelSum {
  double integral;
  double l1;  // integral of |f|, used as a rounding-noise scale
};

PanelSum panel_1d(const Integrand1D& f, double lo, double hi) {
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  double s = 0.0, a = 0.0;
  for (int i = 0; i < kOrder; ++i) {
    const double v = f(c + h * kRule.t[i]);
    s += kRule.w[i] * v;
    a += kRule.w[i] * std::fabs(v);
  }
  return {s * h, a * h};
}

struct Acc {
  double value = 0.0;
  double err = 0.0;
  double l1 = 0.0;
  long long evals = 0;
  bool converged = true;
};

void refine_1d(const Integrand1D& f, double lo, double hi,
               const PanelSum& whole, double rel_tol, int depth, Acc& acc) {
  const double m = 0.5 * (lo + hi);
  const PanelSum left = panel_1d(f, lo, m);
  const PanelSum right = panel_1d(f, m, hi);
  acc.evals += 2 * kOrder;
  const double two = left.integral + right.integral;
  const double diff = std::fabs(two - whole.integral);
  const double l1 = left.l1 + right.l1;
  const double noise = 50.0 * kEps * l1;
  const double tol = std::max({rel_tol * std::fabs(two), noise, kAbsFloor});
  if (diff <= tol || depth >= kMaxDepth || m <= lo || m >= hi ||
      acc.evals >= kMaxEvals) {
    if (diff > tol) acc.converged = false;
    acc.value += two;
    acc.err += diff;
    acc.l1 += l1;
    return;
  }
  refine_1d(f, lo, m, left, rel_tol, depth + 1, acc);
  refine_1d(f, m, hi, right, rel_tol, depth + 1, acc);
}

PanelSum panel_2d(const Integrand2D& f, const Rectangle& r) {
  const double cx = r.sx.mid(), hx = 0.5 * r.sx.width();
  const double cy = r.sy.mid(), hy = 0.5 * r.sy.width();
  double s = 0.0, a = 0.0;
  for (int i = 0; i < kOrder; ++i) {
    const double x = cx + hx * kRule.t[i];
    double rowsum = 0.0, rowabs = 0.0;
    for (int j = 0; j < kOrder; ++j) {
      const double v = f(x, cy + hy * kRule.t[j]);
      rowsum += kRule.w[j] * v;
      rowabs += kRule.w[j] * std::fabs(v);
    }
    s += kRule.w[i] * rowsum;
    a += kRule.w[i] * rowabs;
  }
  return {s * hx * hy, a * hx * hy};
}

void refine_2d(const Integrand2D& f, const Rectangle& r, const PanelSum& whole,
               double rel_tol, int depth, Acc& acc) {
  const double mx = r.sx.mid();
  const double my = r.sy.mid();
  const Rectangle quads[4] = {
      {{r.sx.lo, mx}, {r.sy.lo, my}},
      {{mx, r.sx.hi}, {r.sy.lo, my}},
      {{r.sx.lo, mx}, {my, r.sy.hi}},
      {{mx, r.sx.hi}, {my, r.sy.hi}},
  };
  PanelSum parts[4];
  double four = 0.0, l1 = 0.0;
  for (int q = 0; q < 4; ++q) {
    parts[q] = panel_2d(f, quads[q]);
    four += parts[q].integral;
    l1 += parts[q].l1;
  }
  acc.evals += 4LL * kOrder * kOrder;
  const double diff = std::fabs(four - whole.integral);
  const double noise = 50.0 * kEps * l1;
  const double tol = std::max({rel_tol * std::fabs(four), noise, kAbsFloor});
  const bool splittable = mx > r.sx.lo && mx < r.sx.hi && my > r.sy.lo &&
                          my < r.sy.hi;
  if (diff <= tol || depth >= kMaxDepth || !splittable ||
      acc.evals >= kMaxEvals) {
    if (diff > tol) acc.converged = false;
    acc.value += four;
    acc.err += diff;
    acc.l1 += l1;
    return;
  }
  for (int q = 0; q < 4; ++q)
    refine_2d(f, quads[q], parts[q], rel_tol, depth + 1, acc);
}

QuadratureResult finish(const Acc& acc) {
  QuadratureResult r;
  r.value = acc.value;
  r.abs_error_estimate = std::max(acc.err, kEps * acc.l1);
  r.evaluations = acc.evals;
  r.converged = acc.converged;
  return r;
}

}  // namespace

QuadratureResult integrate_1d(const Integrand1D& f, Interval s,
                              double rel_tol) {
  check_args(s.lo, s.hi, rel_tol);
  const PanelSum whole = panel_1d(f, s.lo, s.hi);
  Acc acc;
  acc.evals = kOrder;
  refine_1d(f, s.lo, s.hi, whole, rel_tol, 0, acc);
  return finish(acc);
}

QuadratureResult integrate_2d(const Integrand2D& f, Rectangle r,
                              double rel_tol) {
  check_args(r.sx.lo, r.sx.hi, rel_tol);
  check_args(r.sy.lo, r.sy.hi, rel_tol);
  const PanelSum whole = panel_2d(f, r);
  Acc acc;
  acc.evals = kOrder * kOrder;
  refine_2d(f, r, whole, rel_tol, 0, acc);
  return finish(acc);
}

QuadratureResult mean_density(const Integrand1D& f, Interval s,
                              double rel_tol) {
  QuadratureResult r = integrate_1d(f, s, rel_tol);
  const double measure = s.width();
  r.value /= measure;
  r.abs_error_estimate /= measure;
  return r;
}

QuadratureResult mean_density_2d(const Integrand2D& f, Rectangle r,
                                 double rel_tol) {
  QuadratureResult q = integrate_2d(f, r, rel_tol);
  const double measure = r.sx.width() * r.sy.width();
  q.value /= measure;
  q.abs_error_estimate /= measure;
  return q;
}

}  // namespace coinlab
