#include "coinlab/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace coinlab {
namespace {

using nlohmann::json;

constexpr const char* kVersion = "coincidence-lab 0.1.0";
constexpr double kOrthogonalityTol = 1e-6;

void parallel_for(int n, int jobs, const std::function<void(int)>& fn) {
  jobs = std::max(1, std::min(jobs, n));
  if (jobs <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::mutex mu;
  std::exception_ptr first_error;
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(jobs);
  for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::optional<Spwf> parse_spwf(const json& j, const std::string& field,
                               std::vector<std::string>& errors) {
  auto fail = [&](const std::string& msg) -> std::optional<Spwf> {
    errors.push_back(field + ": " + msg);
    return std::nullopt;
  };
  if (!j.is_object()) return fail("must be an object");
  if (!j.contains("family") || !j["family"].is_string())
    return fail("missing string field 'family'");
  const std::string family = j["family"];

  auto num = [&](const char* key, double& out) {
    if (!j.contains(key) || !j[key].is_number()) {
      errors.push_back(field + ": missing numeric field '" + key + "'");
      return false;
    }
    out = j[key].get<double>();
    return true;
  };
  auto integer = [&](const char* key, int& out) {
    if (!j.contains(key) || !j[key].is_number_integer()) {
      errors.push_back(field + ": missing integer field '" + key + "'");
      return false;
    }
    out = j[key].get<int>();
    return true;
  };
  auto cplx = [&](const char* key, Complex& out) {
    if (!j.contains(key)) {
      errors.push_back(field + ": missing field '" + key + "'");
      return false;
    }
    const json& v = j[key];
    if (v.is_number()) {
      out = {v.get<double>(), 0.0};
      return true;
    }
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
      out = {v[0].get<double>(), v[1].get<double>()};
      return true;
    }
    errors.push_back(field + ": '" + key + "' must be a number or [re, im]");
    return false;
  };

  try {
    if (family == "box") {
      int n;
      double L;
      if (integer("n", n) && num("L", L)) return Spwf(BoxEigenstate{n, L});
    } else if (family == "oscillator") {
      int n;
      double sigma;
      if (integer("n", n) && num("sigma", sigma))
        return Spwf(OscillatorEigenstate{n, sigma});
    } else if (family == "plane") {
      double k, phase, L;
      if (num("k", k) && num("phase", phase) && num("L", L))
        return Spwf(PlaneWaveReal{k, phase, L});
    } else if (family == "local_regular") {
      Complex amplitude, slope;
      double x0;
      if (cplx("amplitude", amplitude) && cplx("slope", slope) && num("x0", x0))
        return Spwf(LocalRegular{amplitude, slope, x0});
    } else if (family == "local_node") {
      Complex derivative;
      double x0;
      if (cplx("derivative", derivative) && num("x0", x0))
        return Spwf(LocalNode{derivative, x0});
    } else {
      return fail("unknown family '" + family + "'");
    }
  } catch (const std::invalid_argument& e) {
    return fail(e.what());
  }
  return std::nullopt;
}

json spwf_to_json(const Spwf& psi) {
  json j;
  j["family"] = psi.family();
  struct Dump {
    json& j;
    void operator()(const BoxEigenstate& b) const {
      j["n"] = b.n;
      j["L"] = b.L;
    }
    void operator()(const OscillatorEigenstate& o) const {
      j["n"] = o.n;
      j["sigma"] = o.sigma;
    }
    void operator()(const PlaneWaveReal& p) const {
      j["k"] = p.k;
      j["phase"] = p.phase;
      j["L"] = p.L;
    }
    void operator()(const LocalRegular& r) const {
      j["amplitude"] = {r.amplitude.real(), r.amplitude.imag()};
      j["slope"] = {r.slope.real(), r.slope.imag()};
      j["x0"] = r.x0;
    }
    void operator()(const LocalNode& n) const {
      j["derivative"] = {n.derivative.real(), n.derivative.imag()};
      j["x0"] = n.x0;
    }
  };
  std::visit(Dump{j}, psi.variant());
  return j;
}

bool has_node_at(const Spwf& psi, double x0) {
  if (const auto* n = std::get_if<LocalNode>(&psi.variant()))
    return std::fabs(n->x0 - x0) < 1e-9;
  if (std::holds_alternative<LocalRegular>(psi.variant())) return false;
  const double lambda = psi.length_scale();
  const Interval dom = psi.natural_domain();
  const Interval probe{std::max(dom.lo, x0 - lambda / 10.0),
                       std::min(dom.hi, x0 + lambda / 10.0)};
  if (!(probe.lo < probe.hi)) return false;
  for (const double node : find_nodes(psi, probe))
    if (std::fabs(node - x0) < 1e-9 * std::max(1.0, lambda)) return true;
  return false;
}

double pair_length_scale(const Scenario& sc) {
  double lambda = sc.psi1.length_scale();
  if (sc.psi2) lambda = std::min(lambda, sc.psi2->length_scale());
  return lambda;
}

std::string timestamp_utc() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// ---- output tables ---------------------------------------------------------

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
  json summary;  // optional extra object for json output (limit_order)
};

std::string cell_to_csv(const json& c) {
  if (c.is_number_float()) return format_double(c.get<double>());
  if (c.is_number_integer()) return std::to_string(c.get<long long>());
  if (c.is_boolean()) return c.get<bool>() ? "true" : "false";
  if (c.is_string()) return c.get<std::string>();
  return c.dump();
}

void write_table(const Table& t, const std::string& path, OutputFormat fmt) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  if (fmt == OutputFormat::Csv) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      if (i) out << ',';
      out << t.columns[i];
    }
    out << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out << ',';
        out << cell_to_csv(row[i]);
      }
      out << '\n';
    }
  } else {
    json doc;
    json rows = json::array();
    for (const auto& row : t.rows) {
      json obj;
      for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = row[i];
      rows.push_back(obj);
    }
    if (t.summary.is_null()) {
      doc = rows;
    } else {
      doc = t.summary;
      doc["rows"] = rows;
    }
    out << doc.dump(2) << '\n';
  }
}

RatioScenario make_ratio_scenario(const Scenario& sc, RatioKind kind,
                                  Statistics stat) {
  RatioScenario rs{sc.psi1, *sc.psi2, sc.x0};
  rs.kind = kind;
  rs.rel_tol = sc.rel_tol;
  if (kind == RatioKind::StatisticsRatio) {
    rs.numerator = stat;
    rs.denominator = Statistics::Distinguishable;
  } else {
    rs.event_statistics = stat;
  }
  return rs;
}

Table run_ratio_sweep(const Scenario& sc, int jobs) {
  Table t;
  t.columns.push_back("a");
  for (const Statistics s : sc.statistics)
    t.columns.push_back(std::string("ratio_") + to_string(s) + "_dis");
  t.columns.push_back("error");
  t.columns.push_back("converged");

  const int n = static_cast<int>(sc.a_values.size());
  t.rows.assign(n, {});
  parallel_for(n, jobs, [&](int i) {
    const double a = sc.a_values[i];
    std::vector<json> row;
    row.push_back(a);
    double max_err = 0.0;
    bool converged = true;
    for (const Statistics s : sc.statistics) {
      const auto rs = make_ratio_scenario(sc, RatioKind::StatisticsRatio, s);
      const auto r = rs.ratio_at(a * sc.delta, sc.delta);
      row.push_back(r.value);
      max_err = std::max(max_err, r.abs_error);
      converged = converged && r.converged;
    }
    row.push_back(max_err);
    row.push_back(converged);
    t.rows[i] = std::move(row);
  });
  return t;
}

Table run_event_ratio_sweep(const Scenario& sc, int jobs) {
  Table t;
  t.columns.push_back("a");
  for (const Statistics s : sc.statistics)
    t.columns.push_back(std::string("event_ratio_") + to_string(s));
  t.columns.push_back("error");
  t.columns.push_back("converged");

  const int n = static_cast<int>(sc.a_values.size());
  t.rows.assign(n, {});
  parallel_for(n, jobs, [&](int i) {
    const double a = sc.a_values[i];
    std::vector<json> row;
    row.push_back(a);
    double max_err = 0.0;
    bool converged = true;
    for (const Statistics s : sc.statistics) {
      const auto rs = make_ratio_scenario(sc, RatioKind::EventRatio, s);
      const auto r = rs.ratio_at(a * sc.delta, sc.delta);
      row.push_back(r.value);
      max_err = std::max(max_err, r.abs_error);
      converged = converged && r.converged;
    }
    row.push_back(max_err);
    row.push_back(converged);
    t.rows[i] = std::move(row);
  });
  return t;
}

Table run_limit_order(const Scenario& sc, int jobs) {
  struct Task {
    LimitOrder order;
    Statistics stat;
  };
  std::vector<Task> tasks;
  for (const Statistics s : sc.statistics) {
    tasks.push_back({LimitOrder::EtaFirst, s});
    tasks.push_back({LimitOrder::DeltaFirst, s});
  }
  std::vector<LimitEstimate> results(tasks.size());
  parallel_for(static_cast<int>(tasks.size()), jobs, [&](int i) {
    const auto rs =
        make_ratio_scenario(sc, RatioKind::StatisticsRatio, tasks[i].stat);
    results[i] = estimate_limit(rs, {tasks[i].order}, sc.schedule);
  });

  Table t;
  t.columns = {"protocol", "statistics", "value", "extrapolation_error",
               "converged"};
  t.summary = json::object();
  t.summary["eta_first"] = json::object();
  t.summary["delta_first"] = json::object();
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const char* proto =
        tasks[i].order == LimitOrder::EtaFirst ? "eta_first" : "delta_first";
    t.rows.push_back({proto, to_string(tasks[i].stat), results[i].value,
                      results[i].extrapolation_error, results[i].converged});
    t.summary[proto][to_string(tasks[i].stat)] = results[i].value;
  }
  return t;
}

Table run_mean_density_check(const Scenario& sc, int jobs) {
  const int n = sc.halvings + 1;
  Table t;
  t.columns = {"width", "mean", "error", "converged"};
  t.rows.assign(n, {});
  parallel_for(n, jobs, [&](int i) {
    const double w = sc.width_start * std::pow(0.5, i);
    const auto q = mean_density(
        [&](double u) { return std::norm(sc.psi1.evaluate_offset(sc.x0, u)); },
        {-w, w}, sc.rel_tol);
    t.rows[i] = {w, q.value, q.abs_error_estimate, q.converged};
  });
  return t;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ParseOutcome parse_scenario(const std::string& text) {
  ParseOutcome out;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    out.errors.push_back(std::string("malformed JSON: ") + e.what());
    return out;
  }
  if (!j.is_object()) {
    out.errors.push_back("scenario must be a JSON object");
    return out;
  }
  auto& errors = out.errors;

  // experiment
  Experiment experiment = Experiment::RatioSweep;
  if (!j.contains("experiment") || !j["experiment"].is_string()) {
    errors.push_back("missing string field 'experiment'");
  } else {
    const std::string e = j["experiment"];
    if (e == "ratio_sweep") {
      experiment = Experiment::RatioSweep;
    } else if (e == "limit_order") {
      experiment = Experiment::LimitOrder;
    } else if (e == "event_ratio_sweep") {
      experiment = Experiment::EventRatioSweep;
    } else if (e == "mean_density_check") {
      experiment = Experiment::MeanDensityCheck;
    } else {
      errors.push_back("unknown experiment '" + e + "'");
    }
  }

  std::optional<Spwf> psi1, psi2;
  if (j.contains("psi1")) {
    psi1 = parse_spwf(j["psi1"], "psi1", errors);
  } else {
    errors.push_back("missing field 'psi1'");
  }
  const bool needs_psi2 = experiment != Experiment::MeanDensityCheck;
  if (j.contains("psi2")) {
    psi2 = parse_spwf(j["psi2"], "psi2", errors);
  } else if (needs_psi2) {
    errors.push_back("missing field 'psi2'");
  }

  auto number = [&](const char* key, double fallback, bool required) {
    if (!j.contains(key)) {
      if (required) errors.push_back(std::string("missing field '") + key + "'");
      return fallback;
    }
    if (!j[key].is_number()) {
      errors.push_back(std::string("field '") + key + "' must be a number");
      return fallback;
    }
    return j[key].get<double>();
  };

  const double x0 = number("x0", 0.0, true);
  if (!std::isfinite(x0)) errors.push_back("x0 must be finite");

  const double rel_tol = number("rel_tol", 1e-9, false);
  if (!(rel_tol >= 1e-14 && rel_tol <= 1e-2))
    errors.push_back("rel_tol must lie in [1e-14, 1e-2]");

  // lambda scale of the pair, for resolving *_rel fields and gates
  double lambda = std::numeric_limits<double>::infinity();
  if (psi1) lambda = std::min(lambda, psi1->length_scale());
  if (psi2) lambda = std::min(lambda, psi2->length_scale());

  auto resolve_scaled = [&](const char* abs_key, const char* rel_key,
                            bool required) {
    const bool has_abs = j.contains(abs_key);
    const bool has_rel = j.contains(rel_key);
    if (has_abs && has_rel)
      errors.push_back(std::string("give only one of '") + abs_key + "'/'" +
                       rel_key + "'");
    if (has_rel) {
      const double rel = number(rel_key, 0.0, false);
      if (!std::isfinite(lambda)) {
        errors.push_back(std::string("'") + rel_key +
                         "' requires a catalog wavefunction (finite lambda)");
        return 0.0;
      }
      return rel * lambda;
    }
    if (has_abs) return number(abs_key, 0.0, false);
    if (required)
      errors.push_back(std::string("missing field '") + abs_key + "' (or '" +
                       rel_key + "')");
    return 0.0;
  };

  // statistics list
  std::vector<Statistics> statistics;
  if (experiment != Experiment::MeanDensityCheck) {
    if (!j.contains("statistics") || !j["statistics"].is_array() ||
        j["statistics"].empty()) {
      errors.push_back("missing non-empty array field 'statistics'");
    } else {
      for (const auto& s : j["statistics"]) {
        const auto parsed =
            s.is_string() ? statistics_from_string(s.get<std::string>())
                          : std::nullopt;
        if (!parsed) {
          errors.push_back("statistics entries must be \"dis\", \"bos\" or "
                           "\"fer\"");
          continue;
        }
        if (experiment != Experiment::EventRatioSweep &&
            *parsed == Statistics::Distinguishable) {
          errors.push_back(
              "ratio numerators must be \"bos\" or \"fer\" (denominator is "
              "always \"dis\")");
          continue;
        }
        statistics.push_back(*parsed);
      }
    }
  }

  // experiment-specific knobs
  std::vector<double> a_values;
  double delta = 0.0;
  GeometricSchedule schedule{0.0, 0.5, 10};
  double width_start = 0.0;
  int halvings = 8;

  const bool is_sweep = experiment == Experiment::RatioSweep ||
                        experiment == Experiment::EventRatioSweep;
  if (is_sweep) {
    if (!j.contains("a_values") || !j["a_values"].is_array() ||
        j["a_values"].empty()) {
      errors.push_back("missing non-empty array field 'a_values'");
    } else {
      for (const auto& a : j["a_values"]) {
        if (!a.is_number() || !(a.get<double>() >= 0.0) ||
            !std::isfinite(a.get<double>())) {
          errors.push_back("a_values entries must be finite and >= 0");
          continue;
        }
        a_values.push_back(a.get<double>());
      }
    }
    delta = resolve_scaled("delta", "delta_rel", true);
    if (!(delta > 0.0) || !std::isfinite(delta))
      errors.push_back("delta must be > 0");
  }

  if (experiment == Experiment::LimitOrder) {
    if (!j.contains("schedule") || !j["schedule"].is_object()) {
      errors.push_back("missing object field 'schedule'");
    } else {
      const json& s = j["schedule"];
      const bool has_abs = s.contains("start");
      const bool has_rel = s.contains("start_rel");
      if (!has_abs && !has_rel) {
        errors.push_back("schedule: missing 'start' (or 'start_rel')");
      } else if (has_rel) {
        if (!std::isfinite(lambda)) {
          errors.push_back(
              "schedule: 'start_rel' requires a catalog wavefunction");
        } else if (s["start_rel"].is_number()) {
          schedule.start = s["start_rel"].get<double>() * lambda;
        } else {
          errors.push_back("schedule: 'start_rel' must be a number");
        }
      } else if (s["start"].is_number()) {
        schedule.start = s["start"].get<double>();
      } else {
        errors.push_back("schedule: 'start' must be a number");
      }
      if (s.contains("factor")) {
        if (s["factor"].is_number())
          schedule.factor = s["factor"].get<double>();
        else
          errors.push_back("schedule: 'factor' must be a number");
      }
      if (s.contains("count")) {
        if (s["count"].is_number_integer())
          schedule.count = s["count"].get<int>();
        else
          errors.push_back("schedule: 'count' must be an integer");
      }
      if (!(schedule.start > 0.0) || !std::isfinite(schedule.start))
        errors.push_back("schedule: start must be > 0");
      if (!(schedule.factor > 0.0 && schedule.factor < 1.0))
        errors.push_back("schedule: factor must lie in (0, 1)");
      if (schedule.count < 6)
        errors.push_back("schedule: at least 6 samples required");
    }
  }

  if (experiment == Experiment::MeanDensityCheck) {
    width_start = resolve_scaled("width_start", "width_start_rel", true);
    if (!(width_start > 0.0) || !std::isfinite(width_start))
      errors.push_back("width_start must be > 0");
    if (j.contains("halvings")) {
      if (j["halvings"].is_number_integer())
        halvings = j["halvings"].get<int>();
      else
        errors.push_back("halvings must be an integer");
    }
    if (halvings < 3) errors.push_back("halvings must be >= 3");
  }

  // output
  std::string output;
  switch (experiment) {
    case Experiment::RatioSweep:
      output = "ratio_sweep.csv";
      break;
    case Experiment::LimitOrder:
      output = "limit_order.json";
      break;
    case Experiment::EventRatioSweep:
      output = "event_ratio_sweep.csv";
      break;
    case Experiment::MeanDensityCheck:
      output = "mean_density.csv";
      break;
  }
  if (j.contains("output")) {
    if (j["output"].is_string())
      output = j["output"].get<std::string>();
    else
      errors.push_back("output must be a string");
  }
  OutputFormat format =
      experiment == Experiment::LimitOrder ? OutputFormat::Json
                                           : OutputFormat::Csv;
  if (j.contains("format")) {
    const std::string f = j["format"].is_string() ? j["format"].get<std::string>() : "";
    if (f == "csv") {
      format = OutputFormat::Csv;
    } else if (f == "json") {
      format = OutputFormat::Json;
    } else {
      errors.push_back("format must be \"csv\" or \"json\"");
    }
  }

  std::optional<std::string> declared_regime;
  if (j.contains("regime")) {
    const std::string r = j["regime"].is_string() ? j["regime"].get<std::string>() : "";
    if (r == "node" || r == "regular") {
      declared_regime = r;
    } else {
      errors.push_back("regime must be \"node\" or \"regular\"");
    }
  }
  bool allow_non_orthogonal = false;
  if (j.contains("allow_non_orthogonal")) {
    if (j["allow_non_orthogonal"].is_boolean())
      allow_non_orthogonal = j["allow_non_orthogonal"].get<bool>();
    else
      errors.push_back("allow_non_orthogonal must be a boolean");
  }

  // narrow-detector gates (only once the numbers themselves parsed cleanly)
  if (errors.empty() && std::isfinite(lambda)) {
    const double gate = lambda / 100.0;
    if (is_sweep) {
      if (delta > gate)
        errors.push_back("delta violates the narrow-detector condition "
                         "(delta <= lambda/100)");
      double amax = 0.0;
      for (const double a : a_values) amax = std::max(amax, a);
      if (amax * delta > gate)
        errors.push_back("eta = a*delta violates the narrow-detector "
                         "condition (a*delta <= lambda/100)");
    }
    if (experiment == Experiment::LimitOrder && schedule.start > gate)
      errors.push_back("schedule start violates the narrow-detector "
                       "condition (start <= lambda/100)");
    if (experiment == Experiment::MeanDensityCheck && width_start > gate)
      errors.push_back("width_start violates the narrow-detector condition "
                       "(width_start <= lambda/100)");
  }

  // orthogonality gate
  if (errors.empty() && psi1 && psi2) {
    if (psi1->is_catalog() && psi2->is_catalog()) {
      const Interval d1 = psi1->natural_domain();
      const Interval d2 = psi2->natural_domain();
      const Interval hull{std::min(d1.lo, d2.lo), std::max(d1.hi, d2.hi)};
      const double ov = std::abs(overlap(*psi1, *psi2, hull));
      if (ov >= kOrthogonalityTol) {
        if (allow_non_orthogonal) {
          out.warnings.push_back("non-orthogonal pair (|overlap| = " +
                                 format_double(ov) + "), allowed by override");
        } else {
          errors.push_back("non-orthogonal pair (|overlap| = " +
                           format_double(ov) +
                           "); set allow_non_orthogonal to override");
        }
      }
    } else {
      out.warnings.push_back(
          "orthogonality not checked: pair includes a local model");
    }
  }

  // regime declaration vs detected nodes at x0
  if (errors.empty() && psi1 && declared_regime &&
      experiment != Experiment::MeanDensityCheck && psi2) {
    const bool node = has_node_at(*psi1, x0) || has_node_at(*psi2, x0);
    const std::string actual = node ? "node" : "regular";
    if (actual != *declared_regime)
      out.warnings.push_back("declared regime '" + *declared_regime +
                             "' but wavefunctions look '" + actual +
                             "' at x0");
  }

  if (!errors.empty()) return out;

  Scenario sc{*psi1,
              psi2,
              x0,
              experiment,
              std::move(statistics),
              std::move(a_values),
              delta,
              schedule,
              width_start,
              halvings,
              rel_tol,
              output,
              format,
              declared_regime,
              allow_non_orthogonal,
              json{}};

  // normalized echo for the manifest
  json echo;
  echo["psi1"] = spwf_to_json(sc.psi1);
  if (sc.psi2) echo["psi2"] = spwf_to_json(*sc.psi2);
  echo["x0"] = sc.x0;
  echo["experiment"] = j["experiment"];
  echo["rel_tol"] = sc.rel_tol;
  echo["output"] = sc.output;
  echo["format"] = sc.format == OutputFormat::Csv ? "csv" : "json";
  if (sc.declared_regime) echo["regime"] = *sc.declared_regime;
  if (sc.allow_non_orthogonal) echo["allow_non_orthogonal"] = true;
  if (!sc.statistics.empty()) {
    json stats = json::array();
    for (const Statistics s : sc.statistics) stats.push_back(to_string(s));
    echo["statistics"] = stats;
  }
  if (is_sweep) {
    echo["a_values"] = sc.a_values;
    echo["delta"] = sc.delta;
  }
  if (experiment == Experiment::LimitOrder) {
    echo["schedule"] = {{"start", sc.schedule.start},
                        {"factor", sc.schedule.factor},
                        {"count", sc.schedule.count}};
  }
  if (experiment == Experiment::MeanDensityCheck) {
    echo["width_start"] = sc.width_start;
    echo["halvings"] = sc.halvings;
  }
  sc.echo = std::move(echo);
  out.scenario = std::move(sc);
  return out;
}

RunReport run_scenario(const Scenario& scenario, int jobs,
                       const std::optional<std::string>& out_override,
                       const std::optional<OutputFormat>& format_override,
                       std::vector<std::string> extra_warnings) {
  RunReport report;
  report.warnings = std::move(extra_warnings);
  report.output_path = out_override.value_or(scenario.output);
  report.manifest_path = report.output_path + ".manifest.json";
  const OutputFormat fmt = format_override.value_or(scenario.format);

  Table table;
  switch (scenario.experiment) {
    case Experiment::RatioSweep:
      table = run_ratio_sweep(scenario, jobs);
      break;
    case Experiment::EventRatioSweep:
      table = run_event_ratio_sweep(scenario, jobs);
      break;
    case Experiment::LimitOrder:
      table = run_limit_order(scenario, jobs);
      break;
    case Experiment::MeanDensityCheck:
      table = run_mean_density_check(scenario, jobs);
      break;
  }

  report.points_total = static_cast<int>(table.rows.size());
  const auto conv_col =
      std::find(table.columns.begin(), table.columns.end(), "converged") -
      table.columns.begin();
  for (const auto& row : table.rows)
    if (row[conv_col].get<bool>()) ++report.points_converged;

  write_table(table, report.output_path, fmt);

  nlohmann::json manifest;
  manifest["scenario"] = scenario.echo;
  manifest["version"] = kVersion;
  manifest["timestamp"] = timestamp_utc();
  manifest["points_total"] = report.points_total;
  manifest["points_converged"] = report.points_converged;
  manifest["warnings"] = report.warnings;
  std::ofstream mf(report.manifest_path, std::ios::binary);
  if (!mf)
    throw std::runtime_error("cannot open manifest file: " +
                             report.manifest_path);
  mf << manifest.dump(2) << '\n';

  report.exit_code = report.points_converged == report.points_total ? 0 : 2;
  return report;
}

std::string catalog_text() {
  std::ostringstream os;
  os << "Wavefunction families (lambda = smallest internal length scale):\n"
     << "  box           sqrt(2/L) sin(n pi x / L) on [0, L]"
     << "          parameters: n >= 1, L > 0      lambda = L/n\n"
     << "  oscillator    n-th Hermite-Gaussian eigenfunction"
     << "            parameters: n >= 0, sigma > 0  lambda = sigma/sqrt(2n+1)\n"
     << "  plane         sqrt(2/L) cos(k x + phase) on [0, L]"
     << "          parameters: k L multiple of pi  lambda = 2 pi / |k|\n"
     << "  local_regular amplitude + slope (x - x0), amplitude != 0"
     << "     (unnormalized, ratios only)     lambda = inf\n"
     << "  local_node    derivative (x - x0), derivative != 0"
     << "            (unnormalized, ratios only)     lambda = inf\n";
  return os.str();
}

}  // namespace coinlab
