#pragma once

#include "coinlab/jointdensity.hpp"
#include "coinlab/quadrature.hpp"

namespace coinlab {

/// Two detector windows sharing a center: left [x0-eta-delta, x0-eta+delta]
/// and right [x0+eta-delta, x0+eta+delta]. Overlapping windows (eta < delta)
/// are allowed.
struct DetectorPair {
  double x0;
  double eta;    // half-separation, >= 0
  double delta;  // half-width, > 0

  double a() const { return eta / delta; }
  Interval left_local() const { return {-eta - delta, -eta + delta}; }
  Interval right_local() const { return {eta - delta, eta + delta}; }
};

enum class CoincidenceEvent { LeftRight, LeftLeft, RightRight, SameEither };

const char* to_string(CoincidenceEvent ev);

struct CoincidenceProbability {
  double value;
  Statistics statistics;
  CoincidenceEvent event;
  DetectorPair geometry;
  double quadrature_error;
  bool converged;
};

struct RatioResult {
  double value;
  double abs_error;
  bool converged;
};

/// Unnormalized coincidence probability: the joint density integrated over
/// the window rectangle(s) of the event. LeftRight covers both orderings of
/// the labeled coordinates (the L x R integral doubled, which equals
/// L x R + R x L by exchange symmetry); SameEither is L x L + R x R.
CoincidenceProbability coincidence_probability(const JointDensity& jd,
                                               const DetectorPair& g,
                                               CoincidenceEvent ev,
                                               double rel_tol = 1e-10);

/// P_num / P_den for two statistics sharing the wavefunction pair and the
/// geometry. Throws std::runtime_error "denominator consistent with zero"
/// when the denominator is within 10x of its quadrature error.
RatioResult statistics_ratio(const JointDensity& jd_num,
                             const JointDensity& jd_den, const DetectorPair& g,
                             CoincidenceEvent ev, double rel_tol = 1e-10);

/// P(LeftRight) / P(SameEither) for one statistics.
RatioResult event_ratio(const JointDensity& jd, const DetectorPair& g,
                        double rel_tol = 1e-10);

}  // namespace coinlab
