#pragma once

#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "coinlab/quadrature.hpp"

namespace coinlab {

using Complex = std::complex<double>;

/// Particle-in-a-box eigenstate sqrt(2/L) sin(n pi x / L) on [0, L].
struct BoxEigenstate {
  int n;
  double L;
  bool operator==(const BoxEigenstate&) const = default;
};

/// n-th harmonic-oscillator eigenfunction with length scale sigma.
struct OscillatorEigenstate {
  int n;
  double sigma;
  bool operator==(const OscillatorEigenstate&) const = default;
};

/// sqrt(2/L) cos(k x + phase) on [0, L]; k L must be a multiple of pi so
/// the state is normalized and members of the family stay orthogonal.
struct PlaneWaveReal {
  double k;
  double phase;
  double L;
  bool operator==(const PlaneWaveReal&) const = default;
};

/// Local Taylor model amplitude + slope (x - x0), amplitude != 0.
/// Unnormalized; valid only inside detection-window integrals.
struct LocalRegular {
  Complex amplitude;
  Complex slope;
  double x0;
  bool operator==(const LocalRegular&) const = default;
};

/// Local model derivative (x - x0) with an exact zero at x0.
struct LocalNode {
  Complex derivative;
  double x0;
  bool operator==(const LocalNode&) const = default;
};

class Spwf {
 public:
  using Variant = std::variant<BoxEigenstate, OscillatorEigenstate,
                               PlaneWaveReal, LocalRegular, LocalNode>;

  /// Throws std::invalid_argument on parameters violating the family
  /// invariants (n range, positive lengths, nonzero local coefficients).
  explicit Spwf(Variant v);

  Complex evaluate(double x) const;

  /// Amplitude at center + u. Local models whose x0 equals center are
  /// evaluated directly in the offset u, so detection windows many orders
  /// of magnitude below |center| lose no digits to cancellation.
  Complex evaluate_offset(double center, double u) const;

  bool is_catalog() const;
  bool is_local() const { return !is_catalog(); }

  /// Smallest internal length scale (box: L/n, oscillator: sigma/sqrt(2n+1),
  /// plane wave: 2 pi / k). Local models have none and report +inf.
  double length_scale() const;

  /// Truncated support used for normalization and overlap integrals.
  /// Throws for local models (non-normalizable).
  Interval natural_domain() const;

  std::string family() const;
  const Variant& variant() const { return v_; }
  bool operator==(const Spwf&) const = default;

 private:
  Variant v_;
};

/// Inner product over `domain`, catalog variants only; rejects local
/// models with std::invalid_argument ("non-normalizable model").
Complex overlap(const Spwf& a, const Spwf& b, Interval domain,
                double rel_tol = 1e-10);

/// Sign-change zeros inside the domain, bisected to 1e-12 and sorted.
std::vector<double> find_nodes(const Spwf& psi, Interval domain);

/// Normalized Hermite-Gaussian h_n(t), three-term recurrence.
double hermite_function(int n, double t);

}  // namespace coinlab
