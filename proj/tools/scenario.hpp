#pragma once

// Scenario files, the check runner and report/plot-data output for the
// command-line tool.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ired/currents.hpp"
#include "ired/profile.hpp"

namespace ired::cli {

using Json = nlohmann::ordered_json;

struct Settings {
  std::optional<int> order;     ///< overrides every quadrature order in the scenario
  double tolerance_scale = 1;
};

struct CheckSpec {
  std::string kind;
  std::string id;  ///< unique label, defaults to kind (suffixed on repeats)
  Json params;
  double tolerance = 0;
};

struct Scenario {
  int version = 1;
  std::string name;
  double e = 1;
  int order = 8;  ///< direction rule of the matching checks
  std::map<std::string, ScatteringEvent> events;
  std::map<std::string, FreeFieldData> fields;
  std::vector<CheckSpec> checks;
};

/// Parses and validates; throws Error(Validation) naming the offending path.
Scenario parse_scenario(const Json& doc);
/// Reads a file; Io on a missing file, Validation on malformed JSON.
Scenario load_scenario(const std::string& path);

struct Row {
  std::string name;
  std::string anchor;  ///< relation the row checks
  double lhs = 0;
  double rhs = 0;
  double residual = 0;
  double tolerance = 0;
  bool pass = false;
  std::string error;
  Json details = Json::array();
};

struct Series {
  std::string name;
  std::string relation;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Report {
  std::string scenario;
  Settings settings;
  std::vector<Row> rows;
  std::vector<Series> series;

  bool all_pass() const;
  Json to_json() const;
};

Report run_scenario(const Scenario& s, const Settings& settings = {});

/// Whitespace-separated columns with '#' header lines.
std::string format_series(const Series& s);

/// Writes <dir>/<name>.dat for each selected series (all when empty).
/// Throws Validation listing the available series for an unknown name.
std::vector<std::string> emit_plotdata(const Report& r, const std::vector<std::string>& selection,
                                       const std::string& dir);

/// Full command: returns the exit status (0 pass, 1 failure, 2 input error).
int run_command(int argc, const char* const* argv);

}  // namespace ired::cli
