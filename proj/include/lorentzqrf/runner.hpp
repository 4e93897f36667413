#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lorentzqrf/json_io.hpp"

namespace lqrf::runner {

struct RunConfig {
  std::string scenario;
  io::Json params = io::Json::object();  // flat key -> scalar
  std::string out_dir = ".";
  bool plot_svg = false;
  bool csv = false;
};

enum ExitCode : int { kPass = 0, kConfigError = 1, kToleranceFailure = 2 };

const std::vector<std::string>& scenario_names();

// Reads a flat JSON object; a "scenario" key, if present, is returned separately.
io::Json load_config_file(const std::string& path, std::string* scenario);
// "k=v" with v parsed as number, bool, or string.
void apply_override(io::Json& params, const std::string& assignment);

// Validates parameters, runs the scenario, and writes artifacts. Throws ConfigError on bad input.
ScenarioReport run_scenario(const RunConfig& cfg, io::Json* extra = nullptr);

// Full run with artifacts and exit-code mapping; diagnostics go to err.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

std::string csv(const Table& t);
std::string utc_timestamp();

}  // namespace lqrf::runner
