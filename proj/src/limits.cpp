#include "coinlab/limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace coinlab {
namespace {

constexpr double kConvTol = 1e-6;

void check_schedule(const GeometricSchedule& s) {
  if (!(s.start > 0.0) || !std::isfinite(s.start))
    throw std::invalid_argument("schedule: start must be > 0");
  if (!(s.factor > 0.0 && s.factor < 1.0))
    throw std::invalid_argument("schedule: factor must lie in (0, 1)");
  if (s.count < 6)
    throw std::invalid_argument("schedule: at least 6 samples required");
}

void check_scale_gate(const RatioScenario& sc, double start) {
  const double lambda = sc.length_scale();
  if (std::isfinite(lambda) && start > lambda / 100.0)
    throw std::invalid_argument(
        "schedule start violates the narrow-detector condition "
        "(start <= lambda/100)");
}

// A ratio sample is usable for extrapolation when its quadrature either met
// its own relative goal or still reports an error far below the limit
// convergence tolerance (deep-tail points hit the wavefunction evaluation
// noise floor long before their absolute accuracy matters here).
bool usable(const RatioResult& r) {
  return r.converged ||
         r.abs_error <= 1e-2 * kConvTol * std::max(1.0, std::fabs(r.value));
}

}  // namespace

std::vector<double> GeometricSchedule::values() const {
  check_schedule(*this);
  std::vector<double> v;
  v.reserve(count);
  double x = start;
  for (int i = 0; i < count; ++i) {
    v.push_back(x);
    x *= factor;
  }
  return v;
}

RatioResult RatioScenario::ratio_at(double eta, double delta) const {
  const DetectorPair g{x0, eta, delta};
  if (kind == RatioKind::EventRatio) {
    const JointDensity jd(psi1, psi2, event_statistics);
    return event_ratio(jd, g, rel_tol);
  }
  const JointDensity num(psi1, psi2, numerator);
  const JointDensity den(psi1, psi2, denominator);
  return statistics_ratio(num, den, g, CoincidenceEvent::LeftRight, rel_tol);
}

double RatioScenario::length_scale() const {
  return std::min(psi1.length_scale(), psi2.length_scale());
}

Extrapolated shanks_extrapolate(const std::vector<double>& seq, double tol) {
  if (seq.empty())
    throw std::invalid_argument("shanks_extrapolate: empty sequence");
  if (seq.size() == 1)
    return {seq[0], std::numeric_limits<double>::infinity(), false};

  double value = seq.back();
  double err = std::fabs(seq[seq.size() - 1] - seq[seq.size() - 2]);
  bool converged = err < tol;

  std::vector<double> cur = seq;
  while (cur.size() >= 3) {
    // Already flat to machine precision: nothing left to accelerate.
    double maxdiff = 0.0;
    for (std::size_t i = 0; i + 1 < cur.size(); ++i)
      maxdiff = std::max(maxdiff, std::fabs(cur[i + 1] - cur[i]));
    const double scale = std::max(1.0, std::fabs(cur.back()));
    if (maxdiff < 1e-13 * scale) {
      value = cur.back();
      err = maxdiff;
      converged = true;
      break;
    }

    std::vector<double> next;
    bool degenerate = false;
    for (std::size_t i = 0; i + 2 < cur.size(); ++i) {
      const double d1 = cur[i + 1] - cur[i];
      const double d2 = cur[i + 2] - cur[i + 1];
      const double den = d2 - d1;
      if (std::fabs(den) < 1e-300) {
        degenerate = true;
        break;
      }
      const double c = cur[i + 2] - d2 * d2 / den;
      if (!std::isfinite(c)) {
        degenerate = true;
        break;
      }
      next.push_back(c);
    }
    if (degenerate || next.empty()) break;

    const double nerr =
        next.size() >= 2 ? std::fabs(next[next.size() - 1] - next[next.size() - 2])
                         : std::fabs(next.back() - value);
    if (nerr <= err) {
      value = next.back();
      err = nerr;
      converged = err < tol;
      cur = std::move(next);
    } else {
      break;
    }
  }
  return {value, err, converged};
}

LimitEstimate estimate_limit(const RatioScenario& scenario,
                             LimitProtocol protocol,
                             const GeometricSchedule& schedule) {
  check_schedule(schedule);
  check_scale_gate(scenario, schedule.start);
  if (protocol.order == LimitOrder::FixedRatio &&
      (!(protocol.a >= 0.0) || !std::isfinite(protocol.a)))
    throw std::invalid_argument("FixedRatio: a must be finite and >= 0");
  if (protocol.order == LimitOrder::FixedRatio && protocol.a > 0.0)
    check_scale_gate(scenario, protocol.a * schedule.start);

  const std::vector<double> outer = schedule.values();
  LimitEstimate est;
  est.sequence.reserve(outer.size());
  bool inner_ok = true;

  std::vector<double> outer_ratios;
  outer_ratios.reserve(outer.size());
  for (const double p : outer) {
    double ratio;
    switch (protocol.order) {
      case LimitOrder::FixedRatio: {
        const auto r = scenario.ratio_at(protocol.a * p, p);
        inner_ok = inner_ok && usable(r);
        ratio = r.value;
        break;
      }
      case LimitOrder::EtaFirst:
      case LimitOrder::DeltaFirst: {
        // Inner extrapolation: start at most at the outer value so the tail
        // of the inner sequence sits in the asymptotic regime.
        GeometricSchedule inner = schedule;
        inner.start = std::min(schedule.start, p);
        std::vector<double> inner_ratios;
        inner_ratios.reserve(inner.count);
        for (const double q : inner.values()) {
          const auto r = protocol.order == LimitOrder::EtaFirst
                             ? scenario.ratio_at(q, p)
                             : scenario.ratio_at(p, q);
          inner_ok = inner_ok && usable(r);
          inner_ratios.push_back(r.value);
        }
        const Extrapolated e = shanks_extrapolate(inner_ratios, kConvTol);
        inner_ok = inner_ok && e.converged;
        ratio = e.value;
        break;
      }
      default:
        throw std::logic_error("unknown limit order");
    }
    est.sequence.emplace_back(p, ratio);
    outer_ratios.push_back(ratio);
  }

  const Extrapolated e = shanks_extrapolate(outer_ratios, kConvTol);
  est.value = e.value;
  est.extrapolation_error = e.error;
  est.converged = e.converged && inner_ok;
  return est;
}

std::vector<SweepPoint> sweep_ratio_curve(const RatioScenario& scenario,
                                          const std::vector<double>& a_values,
                                          double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw std::invalid_argument("sweep_ratio_curve: delta must be > 0");
  check_scale_gate(scenario, delta);
  std::vector<SweepPoint> out;
  out.reserve(a_values.size());
  for (const double a : a_values) {
    if (!(a >= 0.0) || !std::isfinite(a))
      throw std::invalid_argument("sweep_ratio_curve: a must be >= 0");
    const auto r = scenario.ratio_at(a * delta, delta);
    out.push_back({a, r.value, r.abs_error, r.converged});
  }
  return out;
}

double asymptotic_model_value(AsymptoticModel model, double a) {
  switch (model) {
    case AsymptoticModel::BosOverDis:
      return 1.0 / (1.0 + 3.0 * a * a);
    case AsymptoticModel::FerOverDis:
      return 2.0 - 1.0 / (1.0 + 3.0 * a * a);
    case AsymptoticModel::BosonEventRatio:
      return 1.0 / (1.0 + 6.0 * a * a);
    case AsymptoticModel::FermionEventRatio:
      return 1.0 + 6.0 * a * a;
  }
  throw std::logic_error("unknown asymptotic model");
}

FitResult fit_asymptotic(const std::vector<SweepPoint>& table,
                         AsymptoticModel model) {
  FitResult fit{0.0, 0.0, 0};
  for (const auto& p : table) {
    if (!p.converged) continue;
    const double expected = asymptotic_model_value(model, p.a);
    const double dev = std::fabs(p.ratio - expected);
    fit.max_abs_deviation = std::max(fit.max_abs_deviation, dev);
    fit.max_rel_deviation =
        std::max(fit.max_rel_deviation, dev / std::fabs(expected));
    ++fit.points_used;
  }
  if (fit.points_used < 4)
    throw std::runtime_error("fit_asymptotic: insufficient converged points");
  return fit;
}

}  // namespace coinlab
