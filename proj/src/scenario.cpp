#include "wavectl/scenario.hpp"

#include "wavectl/csv.hpp"
#include "wavectl/errors.hpp"
#include "wavectl/hum.hpp"
#include "wavectl/observability.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace wavectl {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);

Json to_json(const Point& p) { return Json::array({p.x(), p.y()}); }

Json uniform_alternating(const std::vector<Point>& points, double horizon) {
  Json pts = Json::array();
  for (const auto& p : points) pts.push_back(to_json(p));
  Json partition = Json::array();
  for (double t : uniform_partition(horizon, static_cast<int>(points.size()))) partition.push_back(t);
  return {{"type", "alternating"}, {"points", pts}, {"partition", partition}};
}

std::vector<Point> alternate(const Point& a, const Point& b, int switches) {
  std::vector<Point> out;
  for (int i = 0; i <= switches; ++i) out.push_back(i % 2 == 0 ? a : b);
  return out;
}

double rotating_speed_bound() { return kPi / (4.0 * (1.0 + kSqrt2) + kPi * kSqrt2); }

struct PresetSpec {
  const char* name;
  const char* domain;
  const char* schedule;
  const char* formula;
};

const PresetSpec kPresets[] = {
    {"circle-1alt", "disk", "alternating (1 1) / (1 -1)", "2(1+sqrt2) + 2"},
    {"circle-Nalt", "disk", "N switches between (1 1) and (1 -1)", "2(N+1) + 2sqrt2"},
    {"circle-rotating", "disk", "point sqrt2 (cos at; sin at) with T = pi/(2a)",
     "2(1+sqrt2) + sqrt2 pi/2; a < pi/(4(1+sqrt2)+pi sqrt2)"},
    {"hexagon-1alt", "hexagon", "alternating (1 0) / (-1 0)", "6"},
    {"hexagon-Nalt", "hexagon", "N switches between (1 0) and (-1 0)", "2(2+N)"},
    {"hexagon-diag", "hexagon", "alternating (3/2 sqrt3/2) / (-3/2 -sqrt3/2)", "2sqrt7 + 2sqrt3"},
};

// ------------------------------------------------------------ json access

[[noreturn]] void config_error(const std::string& key, const std::string& what) { throw ConfigError(key, what); }

const Json& require(const Json& node, const std::string& key, const std::string& path) {
  if (!node.is_object() || !node.contains(key)) config_error(path + key, "missing required key");
  return node.at(key);
}

double as_number(const Json& v, const std::string& key) {
  if (!v.is_number()) config_error(key, "expected a number, got " + v.dump());
  return v.get<double>();
}

int as_int(const Json& v, const std::string& key) {
  if (!v.is_number_integer() && !(v.is_number() && std::floor(v.get<double>()) == v.get<double>()))
    config_error(key, "expected an integer, got " + v.dump());
  return static_cast<int>(v.get<double>());
}

Point as_point(const Json& v, const std::string& key) {
  if (!v.is_array() || v.size() != 2) config_error(key, "expected a point [x, y], got " + v.dump());
  return {as_number(v[0], key), as_number(v[1], key)};
}

std::vector<Point> as_points(const Json& v, const std::string& key) {
  if (!v.is_array() || v.empty()) config_error(key, "expected a nonempty list of points");
  std::vector<Point> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_point(v[i], key + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<double> as_numbers(const Json& v, const std::string& key) {
  if (!v.is_array() || v.empty()) config_error(key, "expected a nonempty list of numbers");
  std::vector<double> out;
  for (const auto& x : v) out.push_back(as_number(x, key));
  return out;
}

Domain parse_domain(const Json& node) {
  const std::string type = require(node, "type", "domain.").is_string() ? node.at("type").get<std::string>() : "";
  try {
    if (type == "disk") {
      const Point c = node.contains("center") ? as_point(node.at("center"), "domain.center") : Point::Zero();
      const double r = node.contains("radius") ? as_number(node.at("radius"), "domain.radius") : 1.0;
      return Domain::disk(c, r);
    }
    if (type == "rectangle") {
      return Domain::rectangle(as_number(require(node, "width", "domain."), "domain.width"),
                               as_number(require(node, "height", "domain."), "domain.height"));
    }
    if (type == "hexagon") {
      return Domain::regular_hexagon(node.contains("side") ? as_number(node.at("side"), "domain.side") : 1.0);
    }
    if (type == "polygon") return Domain::polygon(as_points(require(node, "vertices", "domain."), "domain.vertices"));
    if (type == "interval") return Domain::interval(as_number(require(node, "length", "domain."), "domain.length"));
  } catch (const std::invalid_argument& e) {
    config_error("domain", e.what());
  }
  config_error("domain.type", "unknown domain type '" + type + "' (disk, rectangle, hexagon, polygon, interval)");
}

Curve parse_curve(const Json& node) {
  const std::string type = require(node, "type", "schedule.curve.").is_string() ? node.at("type").get<std::string>() : "";
  auto num = [&](const char* key) { return as_number(require(node, key, "schedule.curve."), std::string("schedule.curve.") + key); };
  try {
    if (type == "circular") {
      const Point c = node.contains("center") ? as_point(node.at("center"), "schedule.curve.center") : Point::Zero();
      const double phase = node.contains("phase") ? num("phase") : 0.0;
      return Curve::circular(num("radius"), num("angular_speed"), phase, num("horizon"), c);
    }
    if (type == "polyline") {
      return Curve::polyline(as_numbers(require(node, "times", "schedule.curve."), "schedule.curve.times"),
                             as_points(require(node, "points", "schedule.curve."), "schedule.curve.points"));
    }
    if (type == "segment") {
      return Curve::segment(as_point(require(node, "from", "schedule.curve."), "schedule.curve.from"),
                            as_point(require(node, "to", "schedule.curve."), "schedule.curve.to"), num("horizon"));
    }
    if (type == "constant") {
      return Curve::constant(as_point(require(node, "point", "schedule.curve."), "schedule.curve.point"),
                             num("horizon"));
    }
  } catch (const std::invalid_argument& e) {
    config_error("schedule.curve", e.what());
  }
  config_error("schedule.curve.type", "unknown curve type '" + type + "' (circular, polyline, segment, constant)");
}

Schedule parse_schedule(const Json& node) {
  const std::string type = require(node, "type", "schedule.").is_string() ? node.at("type").get<std::string>() : "";
  if (type == "alternating") {
    AlternatingSchedule s;
    s.points = as_points(require(node, "points", "schedule."), "schedule.points");
    if (node.contains("partition")) {
      s.partition = as_numbers(node.at("partition"), "schedule.partition");
    } else {
      const double horizon = as_number(require(node, "horizon", "schedule."), "schedule.horizon");
      if (!(horizon > 0.0)) config_error("schedule.horizon", "must be positive");
      s.partition = uniform_partition(horizon, static_cast<int>(s.points.size()));
    }
    try {
      s.validate();
    } catch (const std::invalid_argument& e) {
      config_error("schedule.partition", e.what());
    }
    return s;
  }
  if (type == "variable") {
    VariableSchedule s{parse_curve(require(node, "curve", "schedule.")), 256};
    if (node.contains("resolution")) s.resolution = as_int(node.at("resolution"), "schedule.resolution");
    if (s.resolution < 1) config_error("schedule.resolution", "must be positive");
    return s;
  }
  config_error("schedule.type", "unknown schedule type '" + type + "' (alternating, variable)");
}

ScenarioParameters parse_parameters(const Json& node) {
  ScenarioParameters p;
  if (node.is_null()) return p;
  if (!node.is_object()) config_error("parameters", "expected an object");
  static const char* known[] = {"modes", "grid_spacing", "boundary_samples", "time_steps", "samples", "seed",
                                "tolerance", "cg_tolerance", "max_iterations", "identity_modes", "levels", "ks",
                                "reference_resolution", "initial_mode", "expected_threshold", "xi", "s", "tau",
                                "cache_dir"};
  for (const auto& [key, value] : node.items()) {
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return key == k; }) == std::end(known))
      config_error("parameters." + key, "unknown parameter");
  }
  auto key = [](const char* k) { return std::string("parameters.") + k; };
  auto positive_int = [&](const char* k, int& out, int minimum) {
    if (!node.contains(k)) return;
    out = as_int(node.at(k), key(k));
    if (out < minimum) config_error(key(k), "must be at least " + std::to_string(minimum));
  };
  positive_int("modes", p.modes, 0);
  positive_int("boundary_samples", p.boundary_samples, 1);
  positive_int("time_steps", p.time_steps, 0);
  positive_int("samples", p.samples, 1);
  positive_int("max_iterations", p.max_iterations, 1);
  positive_int("identity_modes", p.identity_modes, 1);
  positive_int("levels", p.levels, 1);
  positive_int("reference_resolution", p.reference_resolution, 1);
  positive_int("initial_mode", p.initial_mode, 0);
  if (node.contains("grid_spacing")) {
    p.grid_spacing = as_number(node.at("grid_spacing"), key("grid_spacing"));
    if (!(p.grid_spacing > 0.0)) config_error(key("grid_spacing"), "must be positive");
  }
  if (node.contains("seed")) {
    const Json& v = node.at("seed");
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
      config_error(key("seed"), "expected a nonnegative integer");
    p.seed = v.get<std::uint64_t>();
  }
  if (node.contains("tolerance")) {
    p.has_tolerance = true;
    p.tolerance = as_number(node.at("tolerance"), key("tolerance"));
  }
  if (node.contains("cg_tolerance")) {
    p.cg_tolerance = as_number(node.at("cg_tolerance"), key("cg_tolerance"));
    if (!(p.cg_tolerance > 0.0)) config_error(key("cg_tolerance"), "must be positive");
  }
  if (node.contains("ks")) {
    p.ks.clear();
    for (double k : as_numbers(node.at("ks"), key("ks"))) {
      if (k < 1 || std::floor(k) != k) config_error(key("ks"), "entries must be positive integers");
      p.ks.push_back(static_cast<int>(k));
    }
  }
  if (node.contains("expected_threshold")) {
    p.has_expected_threshold = true;
    p.expected_threshold = as_number(node.at("expected_threshold"), key("expected_threshold"));
  }
  if (node.contains("xi")) {
    p.has_xi = true;
    p.xi = as_point(node.at("xi"), key("xi"));
  }
  if (node.contains("s")) p.s = as_number(node.at("s"), key("s"));
  if (node.contains("tau")) p.tau = as_number(node.at("tau"), key("tau"));
  if (node.contains("cache_dir")) {
    if (!node.at("cache_dir").is_string()) config_error(key("cache_dir"), "expected a string");
    p.cache_dir = node.at("cache_dir").get<std::string>();
  }
  return p;
}

// ------------------------------------------------------------ experiments

using OutputFiles = std::vector<std::pair<std::string, std::string>>;

struct Outcome {
  int code = 0;
  OutputFiles files;
};

BasisOptions basis_options(const ScenarioParameters& p, int default_modes) {
  BasisOptions o;
  o.modes = p.modes > 0 ? p.modes : default_modes;
  o.grid_spacing = p.grid_spacing;
  o.cache_dir = p.cache_dir;
  return o;
}

TraceResolution trace_resolution(const ScenarioParameters& p) { return {p.boundary_samples, p.time_steps}; }

Point default_xi(const Scenario& sc) {
  if (sc.parameters.has_xi) return sc.parameters.xi;
  if (const auto* a = std::get_if<AlternatingSchedule>(&sc.schedule)) return a->points.front();
  return std::get<VariableSchedule>(sc.schedule).curve(0.0);
}

bool check(std::ostream& log, const ScenarioParameters& p, bool ok, const std::string& what) {
  if (!p.has_tolerance) return true;
  log << (ok ? "assertion passed: " : "assertion FAILED: ") << what << '\n';
  return ok;
}

Outcome run_threshold(const Scenario& sc, std::ostream& log) {
  const double threshold = schedule_threshold(sc.domain, sc.schedule);
  const double horizon = schedule_horizon(sc.schedule);
  std::ostringstream out;
  CsvWriter csv(out, {"quantity", "value"});
  csv.row("threshold", threshold);
  csv.row("horizon", horizon);
  csv.row("margin", horizon - threshold);
  csv.row("sigma_measure", build_sigma(sc.domain, sc.schedule).measure());
  if (const auto* a = std::get_if<AlternatingSchedule>(&sc.schedule)) {
    for (std::size_t i = 0; i < a->points.size(); ++i)
      csv.row("radius_" + std::to_string(i), radius_max(sc.domain, a->points[i]));
    for (std::size_t i = 0; i + 1 < a->points.size(); ++i)
      csv.row("gap_" + std::to_string(i), pair_distance(a->points[i + 1], a->points[i]));
    const auto flags = classical_reducibility(*a, sc.domain);
    for (std::size_t i = 0; i < flags.size(); ++i) csv.row("classical_" + std::to_string(i), flags[i] ? 1 : 0);
  } else {
    const auto& curve = std::get<VariableSchedule>(sc.schedule).curve;
    csv.row("curve_length", curve_length(curve));
    csv.row("c_0", endpoint_radius(sc.domain, curve, 0.0));
    csv.row("c_T", endpoint_radius(sc.domain, curve, curve.horizon()));
  }
  Outcome o;
  o.files.emplace_back("thresholds.csv", out.str());
  if (sc.parameters.has_expected_threshold) {
    std::ostringstream what;
    what << "|threshold - expected| = " << std::abs(threshold - sc.parameters.expected_threshold)
         << " <= " << sc.parameters.tolerance;
    if (!check(log, sc.parameters,
               std::abs(threshold - sc.parameters.expected_threshold) <= sc.parameters.tolerance, what.str()))
      o.code = 2;
  }
  return o;
}

Outcome run_identity(const Scenario& sc, std::ostream& log) {
  const auto& p = sc.parameters;
  const double tau = p.tau < 0.0 ? schedule_horizon(sc.schedule) : p.tau;
  if (!(p.s >= 0.0 && tau > p.s)) config_error("parameters.tau", "identity needs 0 <= s < tau");
  const Point xi = default_xi(sc);
  BasisOptions options = basis_options(p, 0);
  const auto base = build_basis(sc.domain, options);
  const ModalState seed_state =
      random_unit_energy_state(base, std::min(p.identity_modes, base->size()), p.seed, 0);
  const int intervals = p.time_steps > 0 ? p.time_steps : default_time_intervals(tau - p.s);

  std::vector<std::pair<int, IdentityReport>> rows;
  for (int level = 0, r = 1; level < p.levels; ++level, r *= 2) {
    std::shared_ptr<const EigenBasis> basis = base;
    if (r > 1 && !sc.domain.is_polygon()) {
      BasisOptions refined = options;
      refined.gauss_points *= r;
      refined.radial_points *= r;
      refined.angular_points *= r;
      basis = build_basis(sc.domain, refined);
    }
    ModalState state = seed_state;
    state.basis = basis;
    const IdentityReport rep = multiplier_residual(state, xi, p.s, tau, {r * p.boundary_samples, r * intervals});
    log << "identity resolution " << r << ": lhs " << format_number(rep.lhs) << " rhs " << format_number(rep.rhs)
        << " relative residual " << format_number(rep.relative_residual) << '\n';
    rows.emplace_back(r, rep);
  }
  Outcome o;
  std::ostringstream out;
  write_identity_csv(out, rows);
  o.files.emplace_back("identity_convergence.csv", out.str());
  std::ostringstream what;
  what << "identity relative residual " << rows.front().second.relative_residual << " < " << p.tolerance;
  if (!check(log, p, rows.front().second.relative_residual < p.tolerance, what.str())) o.code = 2;
  return o;
}

Outcome run_observability(const Scenario& sc, std::ostream& log) {
  const auto& p = sc.parameters;
  const BasisOptions options = basis_options(p, 32);
  SampleSpec spec{p.samples, p.seed, options.modes, trace_resolution(p)};
  const ObservabilityReport rep = observability_ratio(sc.schedule, sc.domain, spec, build_basis(sc.domain, options));
  log << "observability: min ratio " << format_number(rep.min_ratio) << " mean " << format_number(rep.mean_ratio)
      << " quadrature error " << format_number(rep.quadrature_error) << " (empirical lower bound only)\n";
  Outcome o;
  std::ostringstream ratios, summary;
  write_ratios_csv(ratios, rep);
  write_observability_summary_csv(summary, rep);
  o.files.emplace_back("ratios.csv", ratios.str());
  o.files.emplace_back("summary.csv", summary.str());
  std::ostringstream what;
  what << "minimum ratio " << rep.min_ratio << " > " << p.tolerance;
  if (!check(log, p, rep.min_ratio > p.tolerance, what.str())) o.code = 2;
  return o;
}

Outcome run_convergence(const Scenario& sc, std::ostream& log) {
  const auto* v = std::get_if<VariableSchedule>(&sc.schedule);
  if (!v) config_error("schedule.type", "the convergence experiment needs a variable schedule");
  const auto& p = sc.parameters;
  const auto measures = check_convergence_sequence(sc.domain, v->curve, p.ks, p.reference_resolution);
  std::ostringstream out;
  CsvWriter csv(out, {"k", "measure"});
  for (std::size_t i = 0; i < measures.size(); ++i) {
    csv.row(p.ks[i], measures[i]);
    log << "convergence k = " << p.ks[i] << ": " << format_number(measures[i]) << '\n';
  }
  Outcome o;
  o.files.emplace_back("convergence.csv", out.str());
  std::ostringstream what;
  what << "finest symmetric difference " << measures.back() << " <= " << p.tolerance;
  if (!check(log, p, measures.back() <= p.tolerance, what.str())) o.code = 2;
  return o;
}

Outcome run_hum(const Scenario& sc, std::ostream& log) {
  const auto& p = sc.parameters;
  const auto basis = build_basis(sc.domain, basis_options(p, 24));
  const int K = basis->size();
  if (p.initial_mode >= K) config_error("parameters.initial_mode", "must be below the number of modes");
  ControlProblem problem{sc.domain,
                         sc.schedule,
                         basis,
                         Eigen::VectorXd::Unit(K, p.initial_mode),
                         Eigen::VectorXd::Zero(K),
                         Eigen::VectorXd::Zero(K),
                         Eigen::VectorXd::Zero(K),
                         p.cg_tolerance,
                         p.max_iterations,
                         trace_resolution(p)};
  if (const auto* a = std::get_if<AlternatingSchedule>(&sc.schedule)) {
    const auto flags = classical_reducibility(*a, sc.domain);
    const bool any = std::find(flags.begin(), flags.end(), true) != flags.end();
    log << "classical reducibility: " << (any ? "some interval is long enough for a fixed-support control"
                                              : "no interval is long enough on its own")
        << '\n';
  }
  Outcome o;
  HUMResult result;
  try {
    result = solve_control(problem);
  } catch (const IllConditionedGramianError& e) {
    log << "hum: " << e.what() << '\n';
    std::ostringstream out;
    CsvWriter csv(out, {"iter", "residual"});
    for (std::size_t i = 0; i < e.residual_history().size(); ++i) csv.row(i, e.residual_history()[i]);
    o.files.emplace_back("residuals.csv", out.str());
    o.code = 2;
    return o;
  }
  for (const auto& w : result.warnings) log << "warning: " << w << '\n';
  log << "hum: " << result.iterations << " iterations, relative final residual "
      << format_number(result.relative_residual) << ", control energy " << format_number(result.control_energy)
      << '\n';
  std::ostringstream control, residuals, summary;
  write_control_csv(control, result.control);
  write_residuals_csv(residuals, result);
  write_hum_summary(summary, result);
  o.files.emplace_back("control.csv", control.str());
  o.files.emplace_back("residuals.csv", residuals.str());
  o.files.emplace_back("summary.txt", summary.str());
  std::ostringstream what;
  what << "relative final residual " << result.relative_residual << " < " << p.tolerance;
  if (!check(log, p, result.relative_residual < p.tolerance, what.str())) o.code = 2;
  return o;
}

}  // namespace

std::vector<PresetInfo> list_presets(std::string_view domain_filter) {
  std::vector<PresetInfo> out;
  for (const auto& spec : kPresets) {
    if (!domain_filter.empty() && domain_filter != spec.domain) continue;
    const Scenario sc = parse_scenario(expand_config(Json{{"preset", spec.name}}));
    out.push_back({spec.name, spec.domain, spec.schedule, spec.formula, schedule_threshold(sc.domain, sc.schedule)});
  }
  return out;
}

void write_preset_table(std::ostream& out, const std::vector<PresetInfo>& presets) {
  CsvWriter csv(out, {"name", "domain", "schedule", "threshold_formula", "threshold"});
  for (const auto& p : presets) csv.row(p.name, p.domain, p.schedule, p.threshold_formula, p.threshold);
}

Json expand_preset(const std::string& name, const Json& options) {
  auto option = [&](const char* key, double fallback) {
    if (!options.is_object() || !options.contains(key)) return fallback;
    return as_number(options.at(key), std::string("preset_options.") + key);
  };
  const int switches = static_cast<int>(option("N", 3));
  const double factor = option("horizon_factor", 1.05);
  if (switches < 1) config_error("preset_options.N", "must be at least 1");
  if (!(factor > 0.0)) config_error("preset_options.horizon_factor", "must be positive");

  const Json disk = {{"type", "disk"}, {"center", {0.0, 0.0}}, {"radius", 1.0}};
  const Json hexagon = {{"type", "hexagon"}, {"side", 1.0}};
  auto alternating = [&](const Json& domain_json, const std::vector<Point>& points) {
    const double threshold = alternating_threshold(parse_domain(domain_json), points);
    return Json{{"domain", domain_json}, {"schedule", uniform_alternating(points, factor * threshold)}};
  };

  Json out;
  if (name == "circle-1alt") {
    out = alternating(disk, alternate(Point(1, 1), Point(1, -1), 1));
  } else if (name == "circle-Nalt") {
    out = alternating(disk, alternate(Point(1, 1), Point(1, -1), switches));
  } else if (name == "circle-rotating") {
    const double fraction = option("alpha_fraction", 0.9);
    if (!(fraction > 0.0)) config_error("preset_options.alpha_fraction", "must be positive");
    const double alpha = fraction * rotating_speed_bound();
    const Json curve = {{"type", "circular"}, {"center", {0.0, 0.0}}, {"radius", kSqrt2},
                        {"angular_speed", alpha}, {"phase", 0.0}, {"horizon", kPi / (2.0 * alpha)}};
    out = {{"domain", disk}, {"schedule", {{"type", "variable"}, {"curve", curve}, {"resolution", 256}}}};
  } else if (name == "hexagon-1alt") {
    out = alternating(hexagon, alternate(Point(1, 0), Point(-1, 0), 1));
  } else if (name == "hexagon-Nalt") {
    out = alternating(hexagon, alternate(Point(1, 0), Point(-1, 0), switches));
  } else if (name == "hexagon-diag") {
    out = alternating(hexagon, alternate(Point(1.5, kSqrt3 / 2), Point(-1.5, -kSqrt3 / 2), 1));
  } else {
    config_error("preset", "unknown preset '" + name + "'");
  }
  out["experiment"] = "threshold";
  return out;
}

void apply_override(Json& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0)
    config_error(std::string(assignment), "override must look like key=value");
  const std::string key(assignment.substr(0, eq));
  const std::string text(assignment.substr(eq + 1));
  Json value = Json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;

  Json* node = &config;
  std::size_t start = 0;
  for (;;) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (part.empty()) config_error(key, "empty path component in override");
    if (!node->is_object()) {
      if (!node->is_null()) config_error(key, "override descends into a non-object value");
      *node = Json::object();
    }
    if (dot == std::string::npos) {
      (*node)[part] = value;
      return;
    }
    node = &(*node)[part];
    start = dot + 1;
  }
}

Json expand_config(const Json& config) {
  if (!config.is_object()) config_error("", "scenario configuration must be a JSON object");
  if (!config.contains("preset")) return config;
  if (!config.at("preset").is_string()) config_error("preset", "expected a preset name");
  const std::string name = config.at("preset").get<std::string>();
  Json expanded = expand_preset(name, config.value("preset_options", Json::object()));
  expanded["name"] = name;
  expanded.merge_patch(config);
  return expanded;
}

Scenario parse_scenario(const Json& expanded) {
  Scenario sc;
  sc.expanded = expanded;
  sc.name = expanded.value("name", "scenario");
  sc.domain = parse_domain(require(expanded, "domain", ""));
  sc.schedule = parse_schedule(require(expanded, "schedule", ""));
  const Json& experiment = expanded.contains("experiment") ? expanded.at("experiment") : Json("threshold");
  if (!experiment.is_string()) config_error("experiment", "expected a string");
  sc.experiment = experiment.get<std::string>();
  static const char* experiments[] = {"threshold", "identity", "observability", "convergence", "hum"};
  if (std::find_if(std::begin(experiments), std::end(experiments), [&](const char* e) { return sc.experiment == e; }) ==
      std::end(experiments))
    config_error("experiment", "unknown experiment '" + sc.experiment +
                                   "' (threshold, identity, observability, convergence, hum)");
  sc.parameters = parse_parameters(expanded.contains("parameters") ? expanded.at("parameters") : Json());
  if (expanded.contains("output") && !expanded.at("output").is_string()) config_error("output", "expected a path");
  sc.output = expanded.value("output", "wavectl-out");
  return sc;
}

Scenario scenario_from_json(Json config, const std::vector<std::string>& overrides) {
  for (const auto& o : overrides) apply_override(config, o);
  return parse_scenario(expand_config(config));
}

Scenario load_scenario(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) config_error("", "cannot open scenario file " + path.string());
  Json config = Json::parse(in, nullptr, false);
  if (config.is_discarded()) config_error("", "scenario file " + path.string() + " is not valid JSON");
  return scenario_from_json(std::move(config), overrides);
}

int run_scenario(const Scenario& sc, std::ostream& log) {
  log << "scenario " << sc.name << ": experiment " << sc.experiment << '\n';
  log << "expanded " << sc.expanded.dump() << '\n';
  log << "domain " << sc.domain.describe() << '\n';
  log << "threshold " << format_number(schedule_threshold(sc.domain, sc.schedule)) << ", horizon "
      << format_number(schedule_horizon(sc.schedule)) << '\n';

  Outcome outcome;
  if (sc.experiment == "threshold") {
    outcome = run_threshold(sc, log);
  } else if (sc.experiment == "identity") {
    outcome = run_identity(sc, log);
  } else if (sc.experiment == "observability") {
    outcome = run_observability(sc, log);
  } else if (sc.experiment == "convergence") {
    outcome = run_convergence(sc, log);
  } else {
    outcome = run_hum(sc, log);
  }

  std::ostringstream sigma;
  write_sigma_csv(sigma, build_sigma(sc.domain, sc.schedule));
  outcome.files.emplace_back("sigma.csv", sigma.str());
  outcome.files.emplace_back("scenario.json", sc.expanded.dump(2) + "\n");

  std::filesystem::create_directories(sc.output);
  for (const auto& [name, content] : outcome.files) {
    write_file_atomic(sc.output / name, content);
    log << "wrote " << (sc.output / name).string() << '\n';
  }
  return outcome.code;
}

}  // namespace wavectl
