#pragma once

#include <optional>
#include <string_view>

#include "coinlab/spwf.hpp"

namespace coinlab {

enum class Statistics { Distinguishable, Boson, Fermion };

const char* to_string(Statistics s);
std::optional<Statistics> statistics_from_string(std::string_view s);

/// |psi(x)|^2
double single_pdf(const Spwf& psi, double x);

/// Exchange cross-term Re{psi1(x1) psi1*(x2) psi2(x1) psi2*(x2)},
/// symmetric under x1 <-> x2.
double interference_term(const Spwf& psi1, const Spwf& psi2, double x1,
                         double x2);

/// Two-particle joint probability density for one of the three statistics.
/// Bosons and fermions are evaluated from the symmetrized product
/// amplitude, so the density is nonnegative by construction and the
/// fermion diagonal vanishes exactly.
class JointDensity {
 public:
  JointDensity(Spwf psi1, Spwf psi2, Statistics statistics);

  double evaluate(double x1, double x2) const;

  /// Joint density at (center + u1, center + u2) in window-local
  /// coordinates; see Spwf::evaluate_offset.
  double evaluate_offset(double center, double u1, double u2) const;

  const Spwf& psi1() const { return psi1_; }
  const Spwf& psi2() const { return psi2_; }
  Statistics statistics() const { return statistics_; }

 private:
  Spwf psi1_;
  Spwf psi2_;
  Statistics statistics_;
};

}  // namespace coinlab
