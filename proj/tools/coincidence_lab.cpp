#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "coinlab/scenario.hpp"

namespace {

int read_file(const std::string& path, std::string& text) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read " << path << "\n";
    return 1;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  text = ss.str();
  return 0;
}

void print_diagnostics(const coinlab::ParseOutcome& outcome) {
  for (const auto& e : outcome.errors) std::cerr << "error: " << e << "\n";
  for (const auto& w : outcome.warnings) std::cerr << "warning: " << w << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coincidence-lab: two-particle coincidence detection tables"};
  app.require_subcommand(1);

  std::string scenario_path;
  int jobs = 1;
  std::string out_path;
  std::string format;

  auto* run = app.add_subcommand("run", "execute a scenario file");
  run->add_option("scenario", scenario_path, "scenario JSON file")->required();
  run->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  run->add_option("--out", out_path, "override output path");
  run->add_option("--format", format, "override output format")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* validate = app.add_subcommand("validate", "check a scenario file");
  validate->add_option("scenario", scenario_path, "scenario JSON file")
      ->required();

  auto* catalog =
      app.add_subcommand("catalog", "list wavefunction families");

  CLI11_PARSE(app, argc, argv);

  if (catalog->parsed()) {
    std::cout << coinlab::catalog_text();
    return 0;
  }

  std::string text;
  if (read_file(scenario_path, text) != 0) return 1;
  const auto outcome = coinlab::parse_scenario(text);
  print_diagnostics(outcome);
  if (!outcome.scenario) return 1;

  if (validate->parsed()) {
    std::cout << "scenario ok\n";
    return 0;
  }

  std::optional<std::string> out_override;
  if (!out_path.empty()) out_override = out_path;
  std::optional<coinlab::OutputFormat> format_override;
  if (format == "csv") format_override = coinlab::OutputFormat::Csv;
  if (format == "json") format_override = coinlab::OutputFormat::Json;

  try {
    const auto report = coinlab::run_scenario(
        *outcome.scenario, jobs, out_override, format_override,
        outcome.warnings);
    std::cout << "wrote " << report.output_path << " ("
              << report.points_converged << "/" << report.points_total
              << " points converged)\n"
              << "manifest: " << report.manifest_path << "\n";
    if (report.exit_code == 2)
      std::cerr << "warning: some points did not converge\n";
    return report.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
