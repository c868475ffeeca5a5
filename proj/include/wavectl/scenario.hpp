#pragma once

#include "wavectl/schedule.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace wavectl {

using Json = nlohmann::ordered_json;

struct PresetInfo {
  std::string name;
  std::string domain;
  std::string schedule;
  std::string threshold_formula;
  double threshold = 0.0;  ///< at the default preset options
};

/// The six named scenarios; `domain_filter` matches the domain column
/// ("disk", "hexagon"); empty keeps all.
std::vector<PresetInfo> list_presets(std::string_view domain_filter = {});
void write_preset_table(std::ostream& out, const std::vector<PresetInfo>& presets);

/// Domain + schedule (+ default experiment) for a named preset. Options:
/// N (number of switches), alpha_fraction, horizon_factor.
Json expand_preset(const std::string& name, const Json& options = Json::object());

/// Sets a dotted key ("parameters.seed=7"). The value is parsed as JSON when
/// possible and kept as a string otherwise.
void apply_override(Json& config, std::string_view assignment);

/// Resolves "preset" into explicit domain and schedule entries; keys given in
/// `config` win over the preset's.
Json expand_config(const Json& config);

struct ScenarioParameters {
  int modes = 0;
  double grid_spacing = 1.0 / 64.0;
  int boundary_samples = 512;
  int time_steps = 0;
  int samples = 100;
  std::uint64_t seed = 20240611;
  bool has_tolerance = false;
  double tolerance = 0.0;
  double cg_tolerance = 1e-6;
  int max_iterations = 200;
  int identity_modes = 10;
  int levels = 2;
  std::vector<int> ks{8, 16, 32, 64};
  int reference_resolution = 2048;
  int initial_mode = 0;
  bool has_expected_threshold = false;
  double expected_threshold = 0.0;
  bool has_xi = false;
  Point xi = Point::Zero();
  double s = 0.0;
  double tau = -1.0;  ///< < 0: schedule horizon
  std::string cache_dir;
};

struct Scenario {
  std::string name;
  Json expanded;
  Domain domain = Domain::unit_disk();
  Schedule schedule;
  std::string experiment;
  ScenarioParameters parameters;
  std::filesystem::path output;
};

/// Validates an expanded configuration. Throws ConfigError naming the key.
Scenario parse_scenario(const Json& expanded);

/// Loads a JSON file, applies overrides, expands presets and parses.
Scenario load_scenario(const std::filesystem::path& path, const std::vector<std::string>& overrides);
Scenario scenario_from_json(Json config, const std::vector<std::string>& overrides);

/// Runs the experiment and writes its CSV files into scenario.output.
/// Returns 0 on success and 2 when a declared tolerance is violated.
int run_scenario(const Scenario& scenario, std::ostream& log);

}  // namespace wavectl
