#include "wavectl/errors.hpp"
#include "wavectl/scenario.hpp"
#include "wavectl/verification.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

namespace {

struct RunFlags {
  std::string config;
  std::string preset;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<int> modes;
  std::optional<int> boundary_samples;
  std::optional<int> time_steps;
  std::optional<double> tolerance;
  std::vector<std::string> overrides;
};

int run(const RunFlags& flags) {
  using namespace wavectl;
  std::vector<std::string> overrides = flags.overrides;
  // typed flags are applied after the generic overrides so they win
  if (flags.out) overrides.push_back("output=" + Json(*flags.out).dump());
  if (flags.seed) overrides.push_back("parameters.seed=" + std::to_string(*flags.seed));
  if (flags.modes) overrides.push_back("parameters.modes=" + std::to_string(*flags.modes));
  if (flags.boundary_samples) overrides.push_back("parameters.boundary_samples=" + std::to_string(*flags.boundary_samples));
  if (flags.time_steps) overrides.push_back("parameters.time_steps=" + std::to_string(*flags.time_steps));
  if (flags.tolerance) overrides.push_back("parameters.tolerance=" + Json(*flags.tolerance).dump());

  Scenario scenario;
  if (!flags.config.empty()) {
    scenario = load_scenario(flags.config, overrides);
  } else if (!flags.preset.empty()) {
    scenario = scenario_from_json(Json{{"preset", flags.preset}}, overrides);
  } else {
    throw ConfigError("", "run needs a scenario file or --preset");
  }
  return run_scenario(scenario, std::cout);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary observability and control experiments for the wave equation"};
  app.require_subcommand(1);

  RunFlags flags;
  auto* run_cmd = app.add_subcommand("run", "Run a scenario file or a named preset");
  run_cmd->add_option("config", flags.config, "Scenario JSON file");
  run_cmd->add_option("--preset", flags.preset, "Named preset instead of a file");
  run_cmd->add_option("--out", flags.out, "Output directory");
  run_cmd->add_option("--seed", flags.seed, "Random seed");
  run_cmd->add_option("--modes", flags.modes, "Number of eigenmodes K");
  run_cmd->add_option("--boundary-samples", flags.boundary_samples, "Boundary quadrature nodes");
  run_cmd->add_option("--time-steps", flags.time_steps, "Time quadrature intervals");
  run_cmd->add_option("--tolerance", flags.tolerance, "Declared assertion tolerance");
  run_cmd->add_option("--override", flags.overrides, "key=value with a dotted key (repeatable)");

  std::string domain_filter;
  auto* list_cmd = app.add_subcommand("list-presets", "Print the named presets");
  list_cmd->add_option("--domain", domain_filter, "Keep presets on this domain (disk, hexagon)");

  app.add_subcommand("verify", "Run the invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*run_cmd) return run(flags);
    if (*list_cmd) {
      wavectl::write_preset_table(std::cout, wavectl::list_presets(domain_filter));
      return 0;
    }
    return wavectl::run_invariant_suite(std::cout) ? 0 : 2;
  } catch (const wavectl::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
