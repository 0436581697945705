#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "coinlab/limits.hpp"

namespace coinlab {

enum class Experiment { RatioSweep, LimitOrder, EventRatioSweep, MeanDensityCheck };
enum class OutputFormat { Csv, Json };

/// A validated, fully resolved scenario (relative schedule bounds already
/// scaled by the pair's length scale).
struct Scenario {
  Spwf psi1;
  std::optional<Spwf> psi2;  // absent only for mean_density_check
  double x0 = 0.0;
  Experiment experiment = Experiment::RatioSweep;
  std::vector<Statistics> statistics;
  std::vector<double> a_values;
  double delta = 0.0;
  GeometricSchedule schedule{0.0, 0.5, 10};
  double width_start = 0.0;
  int halvings = 8;
  double rel_tol = 1e-9;
  std::string output = "out.csv";
  OutputFormat format = OutputFormat::Csv;
  std::optional<std::string> declared_regime;
  bool allow_non_orthogonal = false;
  nlohmann::json echo;  // normalized scenario, reproduced in the manifest
};

struct ParseOutcome {
  std::optional<Scenario> scenario;
  std::vector<std::string> errors;    // all validation failures, not the first
  std::vector<std::string> warnings;  // e.g. regime mismatch
};

ParseOutcome parse_scenario(const std::string& text);

struct RunReport {
  int exit_code = 0;  // 0 ok, 1 error, 2 partial convergence
  std::string output_path;
  std::string manifest_path;
  std::vector<std::string> warnings;
  int points_total = 0;
  int points_converged = 0;
};

/// Executes the scenario and writes the result table plus its manifest.
/// Points are dispatched to `jobs` workers; row order is deterministic.
RunReport run_scenario(const Scenario& scenario, int jobs = 1,
                       const std::optional<std::string>& out_override = {},
                       const std::optional<OutputFormat>& format_override = {},
                       std::vector<std::string> extra_warnings = {});

/// Human-readable listing of the wavefunction families and their length
/// scale definitions, for the `catalog` subcommand.
std::string catalog_text();

std::string format_double(double v);  // fixed 17-significant-digit format

}  // namespace coinlab
