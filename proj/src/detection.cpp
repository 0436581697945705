#include "coinlab/detection.hpp"

#include <cmath>
#include <stdexcept>

namespace coinlab {
namespace {

void check_geometry(const DetectorPair& g) {
  if (!(g.delta > 0.0) || !std::isfinite(g.delta))
    throw std::invalid_argument("detector pair: delta must be > 0");
  if (!(g.eta >= 0.0) || !std::isfinite(g.eta))
    throw std::invalid_argument("detector pair: eta must be >= 0");
  if (!std::isfinite(g.x0))
    throw std::invalid_argument("detector pair: x0 must be finite");
}

RatioResult make_ratio(const CoincidenceProbability& num,
                       const CoincidenceProbability& den) {
  if (!(den.value > 10.0 * den.quadrature_error))
    throw std::runtime_error("denominator consistent with zero");
  const double r = num.value / den.value;
  const double rel_err = num.quadrature_error / std::max(num.value, 1e-300) +
                         den.quadrature_error / den.value;
  return {r, std::fabs(r) * rel_err + num.quadrature_error / den.value,
          num.converged && den.converged};
}

}  // namespace

const char* to_string(CoincidenceEvent ev) {
  switch (ev) {
    case CoincidenceEvent::LeftRight:
      return "left_right";
    case CoincidenceEvent::LeftLeft:
      return "left_left";
    case CoincidenceEvent::RightRight:
      return "right_right";
    case CoincidenceEvent::SameEither:
      return "same_either";
  }
  return "?";
}

CoincidenceProbability coincidence_probability(const JointDensity& jd,
                                               const DetectorPair& g,
                                               CoincidenceEvent ev,
                                               double rel_tol) {
  check_geometry(g);
  const auto f = [&](double u1, double u2) {
    return jd.evaluate_offset(g.x0, u1, u2);
  };
  const Interval left = g.left_local();
  const Interval right = g.right_local();

  CoincidenceProbability out{0.0, jd.statistics(), ev, g, 0.0, true};
  switch (ev) {
    case CoincidenceEvent::LeftRight: {
      // One ordering integrated, doubled; equals L x R + R x L by exchange
      // symmetry of the joint density.
      const auto q = integrate_2d(f, {left, right}, rel_tol);
      out.value = 2.0 * q.value;
      out.quadrature_error = 2.0 * q.abs_error_estimate;
      out.converged = q.converged;
      break;
    }
    case CoincidenceEvent::LeftLeft: {
      const auto q = integrate_2d(f, {left, left}, rel_tol);
      out.value = q.value;
      out.quadrature_error = q.abs_error_estimate;
      out.converged = q.converged;
      break;
    }
    case CoincidenceEvent::RightRight: {
      const auto q = integrate_2d(f, {right, right}, rel_tol);
      out.value = q.value;
      out.quadrature_error = q.abs_error_estimate;
      out.converged = q.converged;
      break;
    }
    case CoincidenceEvent::SameEither: {
      const auto ql = integrate_2d(f, {left, left}, rel_tol);
      const auto qr = integrate_2d(f, {right, right}, rel_tol);
      out.value = ql.value + qr.value;
      out.quadrature_error = ql.abs_error_estimate + qr.abs_error_estimate;
      out.converged = ql.converged && qr.converged;
      break;
    }
  }
  if (out.value < 0.0) out.value = 0.0;  // rounding only; integrand >= 0
  return out;
}

RatioResult statistics_ratio(const JointDensity& jd_num,
                             const JointDensity& jd_den, const DetectorPair& g,
                             CoincidenceEvent ev, double rel_tol) {
  if (!(jd_num.psi1() == jd_den.psi1() && jd_num.psi2() == jd_den.psi2()))
    throw std::invalid_argument(
        "statistics_ratio: numerator and denominator must share the "
        "wavefunction pair");
  const auto num = coincidence_probability(jd_num, g, ev, rel_tol);
  const auto den = coincidence_probability(jd_den, g, ev, rel_tol);
  return make_ratio(num, den);
}

RatioResult event_ratio(const JointDensity& jd, const DetectorPair& g,
                        double rel_tol) {
  const auto num =
      coincidence_probability(jd, g, CoincidenceEvent::LeftRight, rel_tol);
  const auto den =
      coincidence_probability(jd, g, CoincidenceEvent::SameEither, rel_tol);
  return make_ratio(num, den);
}

}  // namespace coinlab
