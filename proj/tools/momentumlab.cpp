// Command-line scenario runner.
//
// Exit codes: 0 all checks passed, 1 a check failed (or the computation
// raised), 2 usage error.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "momentumlab/scenarios.hpp"

namespace ms = momentumlab::scenarios;

namespace {

std::pair<std::string, std::string> split_assignment(const std::string& s, const char* flag) {
  const auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ms::UsageError(std::string(flag) + " expects name=value, got '" + s + "'");
  }
  return {s.substr(0, eq), s.substr(eq + 1)};
}

ms::json parse_value(const std::string& text) {
  // Accept bare words as strings so --param name=foo works without quoting.
  auto parsed = ms::json::parse(text, nullptr, false);
  return parsed.is_discarded() ? ms::json(text) : parsed;
}

int run(int argc, char** argv) {
  CLI::App app{"momentumlab: momentum sets of unitary representations"};
  std::string scenario, config_path, output, format;
  std::uint64_t seed = 0;
  int samples = 0;
  int directions = 0;
  std::vector<std::string> tols, params;
  bool list = false;

  app.add_flag("--list", list, "List the scenario catalogue");
  auto* o_scenario = app.add_option("--scenario", scenario, "Scenario label");
  app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  auto* o_seed = app.add_option("--seed", seed, "Random seed");
  auto* o_samples = app.add_option("--samples", samples, "Sample count")->check(CLI::PositiveNumber);
  auto* o_dirs = app.add_option("--directions", directions, "Generated direction count")->check(CLI::PositiveNumber);
  app.add_option("--tol", tols, "Tolerance override name=value (repeatable)");
  app.add_option("--param", params, "Scenario parameter name=json-value (repeatable)");
  auto* o_output = app.add_option("--output", output, "Report path (default: stdout)");
  auto* o_format = app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (list) {
    for (const auto& s : ms::list_scenarios()) std::cout << s.label << "\t" << s.description << "\n";
    return 0;
  }

  ms::ScenarioConfig config;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    auto j = ms::json::parse(in, nullptr, false);
    if (j.is_discarded()) throw ms::UsageError("config file is not valid JSON: " + config_path);
    config.merge(j);
  }
  if (*o_scenario) config.scenario = scenario;
  if (*o_seed) config.seed = seed;
  if (*o_samples) config.n_samples = samples;
  if (*o_dirs) {
    config.direction_count = directions;
    config.directions.clear();
  }
  if (*o_output) config.output = output;
  if (*o_format) config.format = format;
  for (const auto& t : tols) {
    const auto [name, value] = split_assignment(t, "--tol");
    try {
      config.tolerances[name] = std::stod(value);
    } catch (const std::exception&) {
      throw ms::UsageError("--tol " + name + ": not a number");
    }
  }
  for (const auto& p : params) {
    const auto [name, value] = split_assignment(p, "--param");
    config.merge(ms::json{{name, parse_value(value)}});
  }

  const auto report = ms::run_scenario(config);
  const std::string text = config.format == "csv" ? report.to_csv() : report.to_json().dump(2) + "\n";
  if (config.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(config.output);
    if (!out) throw ms::UsageError("cannot write " + config.output);
    out << text;
  }
  for (const auto& name : report.failed_checks()) std::cerr << "check failed: " << name << "\n";
  return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const momentumlab::InputError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const momentumlab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
