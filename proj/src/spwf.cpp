#include "coinlab/spwf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace coinlab {
namespace {

constexpr double kPi = std::numbers::pi;

void validate(const Spwf::Variant& v) {
  struct Checker {
    void operator()(const BoxEigenstate& b) const {
      if (b.n < 1) throw std::invalid_argument("box: n must be >= 1");
      if (!(b.L > 0.0) || !std::isfinite(b.L))
        throw std::invalid_argument("box: L must be > 0");
    }
    void operator()(const OscillatorEigenstate& o) const {
      if (o.n < 0) throw std::invalid_argument("oscillator: n must be >= 0");
      if (!(o.sigma > 0.0) || !std::isfinite(o.sigma))
        throw std::invalid_argument("oscillator: sigma must be > 0");
    }
    void operator()(const PlaneWaveReal& p) const {
      if (!(p.L > 0.0) || !std::isfinite(p.L))
        throw std::invalid_argument("plane: L must be > 0");
      if (!std::isfinite(p.k) || p.k == 0.0)
        throw std::invalid_argument("plane: k must be nonzero");
      if (!std::isfinite(p.phase))
        throw std::invalid_argument("plane: phase must be finite");
      const double m = p.k * p.L / kPi;
      if (std::fabs(m - std::round(m)) > 1e-9)
        throw std::invalid_argument(
            "plane: k L must be an integer multiple of pi");
    }
    void operator()(const LocalRegular& r) const {
      if (!std::isfinite(r.x0))
        throw std::invalid_argument("local_regular: x0 must be finite");
      if (r.amplitude == Complex{0.0, 0.0})
        throw std::invalid_argument("local_regular: amplitude must be nonzero");
    }
    void operator()(const LocalNode& n) const {
      if (!std::isfinite(n.x0))
        throw std::invalid_argument("local_node: x0 must be finite");
      if (n.derivative == Complex{0.0, 0.0})
        throw std::invalid_argument("local_node: derivative must be nonzero");
    }
  };
  std::visit(Checker{}, v);
}

}  // namespace

double hermite_function(int n, double t) {
  // h_0 = pi^{-1/4} exp(-t^2/2); h_{k+1} = sqrt(2/(k+1)) t h_k
  //                                       - sqrt(k/(k+1)) h_{k-1}
  const double h0 = std::exp(-0.5 * t * t) / std::pow(kPi, 0.25);
  if (n == 0) return h0;
  double prev = h0;
  double cur = std::sqrt(2.0) * t * h0;
  for (int k = 1; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * t * cur -
                        std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

Spwf::Spwf(Variant v) : v_(std::move(v)) { validate(v_); }

Complex Spwf::evaluate(double x) const {
  struct Eval {
    double x;
    Complex operator()(const BoxEigenstate& b) const {
      if (x < 0.0 || x > b.L) return {0.0, 0.0};
      return {std::sqrt(2.0 / b.L) * std::sin(b.n * kPi * x / b.L), 0.0};
    }
    Complex operator()(const OscillatorEigenstate& o) const {
      return {hermite_function(o.n, x / o.sigma) / std::sqrt(o.sigma), 0.0};
    }
    Complex operator()(const PlaneWaveReal& p) const {
      if (x < 0.0 || x > p.L) return {0.0, 0.0};
      return {std::sqrt(2.0 / p.L) * std::cos(p.k * x + p.phase), 0.0};
    }
    Complex operator()(const LocalRegular& r) const {
      return r.amplitude + r.slope * (x - r.x0);
    }
    Complex operator()(const LocalNode& n) const {
      return n.derivative * (x - n.x0);
    }
  };
  return std::visit(Eval{x}, v_);
}

Complex Spwf::evaluate_offset(double center, double u) const {
  if (const auto* r = std::get_if<LocalRegular>(&v_))
    return r->amplitude + r->slope * ((center - r->x0) + u);
  if (const auto* n = std::get_if<LocalNode>(&v_))
    return n->derivative * ((center - n->x0) + u);
  return evaluate(center + u);
}

bool Spwf::is_catalog() const {
  return !(std::holds_alternative<LocalRegular>(v_) ||
           std::holds_alternative<LocalNode>(v_));
}

double Spwf::length_scale() const {
  struct Scale {
    double operator()(const BoxEigenstate& b) const { return b.L / b.n; }
    double operator()(const OscillatorEigenstate& o) const {
      return o.sigma / std::sqrt(2.0 * o.n + 1.0);
    }
    double operator()(const PlaneWaveReal& p) const {
      return 2.0 * kPi / std::fabs(p.k);
    }
    double operator()(const LocalRegular&) const {
      return std::numeric_limits<double>::infinity();
    }
    double operator()(const LocalNode&) const {
      return std::numeric_limits<double>::infinity();
    }
  };
  return std::visit(Scale{}, v_);
}

Interval Spwf::natural_domain() const {
  struct Domain {
    Interval operator()(const BoxEigenstate& b) const { return {0.0, b.L}; }
    Interval operator()(const OscillatorEigenstate& o) const {
      const double r = (std::sqrt(2.0 * o.n + 1.0) + 10.0) * o.sigma;
      return {-r, r};
    }
    Interval operator()(const PlaneWaveReal& p) const { return {0.0, p.L}; }
    Interval operator()(const LocalRegular&) const {
      throw std::invalid_argument("local models have no natural domain");
    }
    Interval operator()(const LocalNode&) const {
      throw std::invalid_argument("local models have no natural domain");
    }
  };
  return std::visit(Domain{}, v_);
}

std::string Spwf::family() const {
  struct Name {
    std::string operator()(const BoxEigenstate&) const { return "box"; }
    std::string operator()(const OscillatorEigenstate&) const {
      return "oscillator";
    }
    std::string operator()(const PlaneWaveReal&) const { return "plane"; }
    std::string operator()(const LocalRegular&) const {
      return "local_regular";
    }
    std::string operator()(const LocalNode&) const { return "local_node"; }
  };
  return std::visit(Name{}, v_);
}

Complex overlap(const Spwf& a, const Spwf& b, Interval domain,
                double rel_tol) {
  if (a.is_local() || b.is_local())
    throw std::invalid_argument("overlap: non-normalizable model");
  const auto re = integrate_1d(
      [&](double x) {
        return (std::conj(a.evaluate(x)) * b.evaluate(x)).real();
      },
      domain, rel_tol);
  const auto im = integrate_1d(
      [&](double x) {
        return (std::conj(a.evaluate(x)) * b.evaluate(x)).imag();
      },
      domain, rel_tol);
  return {re.value, im.value};
}

std::vector<double> find_nodes(const Spwf& psi, Interval domain) {
  if (!(domain.lo < domain.hi))
    throw std::invalid_argument("find_nodes: empty domain");

  if (const auto* n = std::get_if<LocalNode>(&psi.variant())) {
    if (n->x0 > domain.lo && n->x0 < domain.hi) return {n->x0};
    return {};
  }
  if (std::holds_alternative<LocalRegular>(psi.variant())) return {};

  const auto f = [&psi](double x) { return psi.evaluate(x).real(); };

  constexpr int kScanPoints = 50001;
  constexpr double kTol = 1e-12;
  std::vector<double> nodes;
  const double h = domain.width() / (kScanPoints - 1);
  double xa = domain.lo;
  double fa = f(xa);
  for (int i = 1; i < kScanPoints; ++i) {
    const double xb = domain.lo + i * h;
    const double fb = f(xb);
    if (fa == 0.0 && xa > domain.lo) {
      nodes.push_back(xa);
    } else if (fa * fb < 0.0) {
      double lo = xa, hi = xb, flo = fa;
      while (hi - lo > kTol) {
        const double m = 0.5 * (lo + hi);
        const double fm = f(m);
        if (fm == 0.0) {
          lo = hi = m;
          break;
        }
        if (flo * fm < 0.0) {
          hi = m;
        } else {
          lo = m;
          flo = fm;
        }
      }
      nodes.push_back(0.5 * (lo + hi));
    }
    xa = xb;
    fa = fb;
  }
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

}  // namespace coinlab
