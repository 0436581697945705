#include "coinlab/jointdensity.hpp"

#include <cmath>

namespace coinlab {
namespace {

double joint_from_amplitudes(Complex a1x1, Complex a1x2, Complex a2x1,
                             Complex a2x2, Statistics s) {
  // a and b are the two coordinate assignments of the product amplitude.
  // dis = (|a|^2 + |b|^2)/2, bos/fer = |a +/- b|^2 / 2; the amplitude-level
  // difference keeps the fermion diagonal (a == b) exactly zero and avoids
  // the quadratic cancellation of dis - inter.
  const Complex a = a1x1 * a2x2;
  const Complex b = a1x2 * a2x1;
  switch (s) {
    case Statistics::Distinguishable:
      return 0.5 * (std::norm(a) + std::norm(b));
    case Statistics::Boson:
      return 0.5 * std::norm(a + b);
    case Statistics::Fermion:
      return 0.5 * std::norm(a - b);
  }
  return 0.0;
}

}  // namespace

const char* to_string(Statistics s) {
  switch (s) {
    case Statistics::Distinguishable:
      return "dis";
    case Statistics::Boson:
      return "bos";
    case Statistics::Fermion:
      return "fer";
  }
  return "?";
}

std::optional<Statistics> statistics_from_string(std::string_view s) {
  if (s == "dis") return Statistics::Distinguishable;
  if (s == "bos") return Statistics::Boson;
  if (s == "fer") return Statistics::Fermion;
  return std::nullopt;
}

double single_pdf(const Spwf& psi, double x) {
  return std::norm(psi.evaluate(x));
}

double interference_term(const Spwf& psi1, const Spwf& psi2, double x1,
                         double x2) {
  return ((psi1.evaluate(x1) * std::conj(psi1.evaluate(x2))) *
          (psi2.evaluate(x1) * std::conj(psi2.evaluate(x2))))
      .real();
}

JointDensity::JointDensity(Spwf psi1, Spwf psi2, Statistics statistics)
    : psi1_(std::move(psi1)), psi2_(std::move(psi2)), statistics_(statistics) {}

double JointDensity::evaluate(double x1, double x2) const {
  return joint_from_amplitudes(psi1_.evaluate(x1), psi1_.evaluate(x2),
                               psi2_.evaluate(x1), psi2_.evaluate(x2),
                               statistics_);
}

double JointDensity::evaluate_offset(double center, double u1,
                                     double u2) const {
  return joint_from_amplitudes(
      psi1_.evaluate_offset(center, u1), psi1_.evaluate_offset(center, u2),
      psi2_.evaluate_offset(center, u1), psi2_.evaluate_offset(center, u2),
      statistics_);
}

}  // namespace coinlab
