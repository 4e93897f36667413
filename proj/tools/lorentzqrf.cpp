#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "acceptance/suite.hpp"
#include "lorentzqrf/errors.hpp"
#include "lorentzqrf/runner.hpp"

int main(int argc, char** argv) {
  using namespace lqrf;
  CLI::App app{"Relativistic quantum reference frame scenarios"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run one scenario and write report.json");
  std::string scenario, config_path, out_dir = ".", plot;
  std::vector<std::string> overrides;
  bool csv = false;
  run->add_option("--scenario", scenario, "scenario name");
  run->add_option("--config", config_path, "flat JSON parameter file");
  run->add_option("--set", overrides, "parameter override key=value (repeatable)");
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--plot", plot, "plot format")->check(CLI::IsMember({"svg"}));
  run->add_flag("--csv", csv, "write tables as CSV");

  auto* self = app.add_subcommand("selftest", "run the acceptance criteria");
  std::string self_out;
  self->add_option("--out", self_out, "directory for selftest_report.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : runner::kConfigError;
  }

  if (*self) return acceptance::run_cli(self_out, std::cout);

  runner::RunConfig cfg;
  try {
    std::string from_file;
    if (!config_path.empty()) cfg.params = runner::load_config_file(config_path, &from_file);
    if (scenario.empty()) scenario = from_file;
    if (scenario.empty()) throw ConfigError("no scenario given (use --scenario or a 'scenario' key in --config)");
    if (!from_file.empty() && from_file != scenario)
      throw ConfigError("--scenario " + scenario + " conflicts with config scenario " + from_file);
    for (const auto& o : overrides) runner::apply_override(cfg.params, o);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return runner::kConfigError;
  }
  cfg.scenario = scenario;
  cfg.out_dir = out_dir;
  cfg.plot_svg = plot == "svg";
  cfg.csv = csv;
  return runner::run(cfg, std::cout, std::cerr);
}
