#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "momentumlab/momentum.hpp"
#include "momentumlab/types.hpp"

// Named experiments that exercise the library end to end and produce
// versioned, seed-deterministic reports.
namespace momentumlab::scenarios {

using json = nlohmann::json;

/// Unknown scenario, malformed configuration or bad flag value.
class UsageError : public InputError {
 public:
  using InputError::InputError;
};

struct ScenarioConfig {
  std::string scenario;
  std::uint64_t seed = 0;
  int n_samples = 400;
  int direction_count = 64;
  std::vector<Vec> directions;  // explicit directions replace the generated ones
  std::map<std::string, double> tolerances;
  json params = json::object();  // scenario-specific keys (j, levels, radius, ...)
  std::string output;            // empty: standard output
  std::string format = "json";   // json | csv

  /// Keys: scenario, seed, samples (or n_samples), directions (count or list
  /// of vectors), tol (object), output, format; everything else is a
  /// scenario parameter. Throws UsageError on type errors.
  static ScenarioConfig from_json(const json& j);
  /// Overlays the keys present in `j` onto this config.
  void merge(const json& j);
  /// Checks counts, tolerances and format; throws UsageError.
  void validate() const;
};

struct ScenarioInfo {
  std::string label;
  std::string description;
};

struct CheckRecord {
  std::string name;
  double tolerance = 0.0;
  double residual = 0.0;
  bool passed = false;
  std::string detail;
};

struct RunReport {
  std::string scenario;
  std::uint64_t seed = 0;
  json config = json::object();
  json results = json::object();
  std::vector<CheckRecord> checks;
  std::vector<momentum::SupportRow> support_table;
  double elapsed_seconds = 0.0;

  [[nodiscard]] bool passed() const;
  /// 0 when every check passed, 1 otherwise.
  [[nodiscard]] int exit_code() const;
  [[nodiscard]] std::vector<std::string> failed_checks() const;
  /// Full report; "timing" is omitted when `with_timing` is false.
  [[nodiscard]] json to_json(bool with_timing = true) const;
  /// Support table as CSV, or the check records when the scenario has none.
  [[nodiscard]] std::string to_csv() const;
};

constexpr int kSchemaVersion = 1;

std::vector<ScenarioInfo> list_scenarios();

/// Runs the named scenario. Throws UsageError for unknown labels or invalid
/// configs; library errors propagate.
RunReport run_scenario(const ScenarioConfig& config);

}  // namespace momentumlab::scenarios
