#pragma once

#include <utility>
#include <vector>

#include "coinlab/detection.hpp"

namespace coinlab {

enum class LimitOrder {
  EtaFirst,    // eta -> 0 at fixed delta, then delta -> 0
  DeltaFirst,  // delta -> 0 at fixed eta, then eta -> 0
  FixedRatio,  // eta = a delta -> 0 along the distinguished path
};

struct LimitProtocol {
  LimitOrder order;
  double a = 0.0;  // used by FixedRatio only
};

/// start, start*factor, start*factor^2, ... (count values, count >= 6).
struct GeometricSchedule {
  double start;
  double factor = 0.5;
  int count = 10;

  std::vector<double> values() const;
};

enum class RatioKind { StatisticsRatio, EventRatio };

/// A wavefunction pair plus the ratio being tracked: either
/// P(numerator)/P(denominator) over LeftRight, or the LeftRight/SameEither
/// event ratio of one statistics.
struct RatioScenario {
  Spwf psi1;
  Spwf psi2;
  double x0;
  RatioKind kind = RatioKind::StatisticsRatio;
  Statistics numerator = Statistics::Boson;
  Statistics denominator = Statistics::Distinguishable;
  Statistics event_statistics = Statistics::Boson;
  // Catalog evaluation noise near a node is ~1e-10 relative, so a tighter
  // default would chase rounding instead of converging.
  double rel_tol = 1e-9;

  RatioResult ratio_at(double eta, double delta) const;
  /// min length scale over catalog members; +inf for pure local pairs.
  double length_scale() const;
};

struct LimitEstimate {
  double value;
  std::vector<std::pair<double, double>> sequence;  // (outer parameter, ratio)
  double extrapolation_error;
  bool converged;
};

struct Extrapolated {
  double value;
  double error;
  bool converged;
};

/// Iterated Aitken (Shanks) acceleration of a convergent sequence;
/// converged when successive extrapolants differ by less than tol.
Extrapolated shanks_extrapolate(const std::vector<double>& seq,
                                double tol = 1e-6);

/// Drives the selected ratio along the protocol. Iterated protocols
/// extrapolate the inner parameter to its limit at each outer value before
/// the outer extrapolation. Schedule starts must satisfy start <= lambda/100
/// for catalog pairs.
LimitEstimate estimate_limit(const RatioScenario& scenario,
                             LimitProtocol protocol,
                             const GeometricSchedule& schedule);

struct SweepPoint {
  double a;
  double ratio;
  double error;
  bool converged;
};

/// One ratio per a at fixed small delta with eta = a * delta.
std::vector<SweepPoint> sweep_ratio_curve(const RatioScenario& scenario,
                                          const std::vector<double>& a_values,
                                          double delta);

enum class AsymptoticModel {
  BosOverDis,        // 1 / (1 + 3 a^2)
  FerOverDis,        // 2 - 1 / (1 + 3 a^2)
  BosonEventRatio,   // 1 / (1 + 6 a^2)
  FermionEventRatio  // 1 + 6 a^2
};

double asymptotic_model_value(AsymptoticModel model, double a);

struct FitResult {
  double max_abs_deviation;
  double max_rel_deviation;
  int points_used;
};

/// Deviation of converged sweep points from the named closed form.
/// Throws std::runtime_error when fewer than 4 converged points remain.
FitResult fit_asymptotic(const std::vector<SweepPoint>& table,
                         AsymptoticModel model);

}  // namespace coinlab
