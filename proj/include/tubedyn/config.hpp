#pragma once
//! \file config.hpp
//! \brief Line-oriented scenario config parsing and validation.
//!
//! Grammar (one scenario per file):
//!
//!     # full-line comment
//!     [scenario_name]
//!     key = value
//!
//! Scenario parameters are numeric. The reserved keys are `output` (path),
//! `format` (csv|json), and the sweep block `sweep_key`, `sweep_start`,
//! `sweep_stop`, `sweep_count`, `sweep_scale` (linear|log, default linear).
//! Parsing is strict: unknown keys, duplicate keys, malformed numbers, and
//! missing required keys are all rejected with the offending line number.
//! Parameter VALUES are not range-checked here; bad values surface later as
//! per-row error cells so a sweep can keep going.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tubedyn::config {

class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Scenario {
  diffusive_filament,
  euclidean_fast,
  heliotron,
  radial_modes,
  chicone_latushkin,
  curvature_report,
  stretch_analysis,
};

enum class OutputFormat { csv, json };
enum class SweepScale { linear, log };

inline const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::diffusive_filament: return "diffusive_filament";
    case Scenario::euclidean_fast: return "euclidean_fast";
    case Scenario::heliotron: return "heliotron";
    case Scenario::radial_modes: return "radial_modes";
    case Scenario::chicone_latushkin: return "chicone_latushkin";
    case Scenario::curvature_report: return "curvature_report";
    case Scenario::stretch_analysis: return "stretch_analysis";
  }
  return "unknown";
}

inline const char* to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

inline std::optional<Scenario> scenario_from_name(std::string_view name) {
  for (Scenario s : {Scenario::diffusive_filament, Scenario::euclidean_fast, Scenario::heliotron,
                     Scenario::radial_modes, Scenario::chicone_latushkin,
                     Scenario::curvature_report, Scenario::stretch_analysis})
    if (name == to_string(s)) return s;
  return std::nullopt;
}

//! One schema row: parameter name plus its default (required when none).
struct ParamSpec {
  const char* key;
  bool required;
  double default_value;
};

//! Numeric parameter schema per scenario. Required keys must appear in the
//! config; optional keys fall back to the listed default.
inline const std::vector<ParamSpec>& scenario_schema(Scenario s) {
  static const std::vector<ParamSpec> diffusive = {
      {"eta", true, 0.0},          {"kappa0", true, 0.0},   {"L", true, 0.0},
      {"B0", false, 1.0},          {"kappa_wobble", false, 0.0}, {"tau0", false, 0.0},
  };
  static const std::vector<ParamSpec> fast = {
      {"tau0", true, 0.0},  {"v0", true, 0.0},         {"B0", false, 1.0},
      {"c1", false, 0.0},   {"t0", false, 0.0},        {"t1", false, 10.0},
      {"n_samples", false, 33.0}, {"weak_torsion", false, 0.0}, {"a", false, 1.0},
  };
  static const std::vector<ParamSpec> heliotron = {
      {"B_s0", false, 0.0},  {"B_theta0", false, 0.0}, {"u_s", false, 0.0},
      {"u_theta", false, 0.0}, {"gamma", false, 0.0},  {"tau0", false, 1.0},
      {"U_max", false, 1.0}, {"L", false, 1.0},        {"Re_m", false, 210.0},
      {"a", false, 1.0},     {"m", false, 1.0},        {"theta_R", false, 0.0},
      {"r", false, 0.5},     {"theta", false, 1.0},    {"K", false, 1.0},
  };
  static const std::vector<ParamSpec> radial = {
      {"eta", true, 0.0},
      {"gamma", false, 0.0},
  };
  static const std::vector<ParamSpec> chicone = {
      {"eta", true, 0.0},
      {"kappa", true, 0.0},
  };
  static const std::vector<ParamSpec> curvature = {
      {"kappa", true, 0.0},        {"a", false, 1.0},
      {"r", false, 0.5},           {"theta", false, 0.0},
      {"grid_r_count", false, 5.0}, {"grid_theta_count", false, 8.0},
  };
  static const std::vector<ParamSpec> stretch = {
      {"tau0", true, 0.0},      {"v0", true, 0.0},          {"v_theta", true, 0.0},
      {"a", true, 0.0},         {"kappa0", false, 1.0},     {"r", false, 0.5},
      {"theta", false, 0.0},    {"v_s_prime", false, 0.0},  {"dv_theta_dr", false, 0.0},
      {"omega0", false, 0.0},
  };
  switch (s) {
    case Scenario::diffusive_filament: return diffusive;
    case Scenario::euclidean_fast: return fast;
    case Scenario::heliotron: return heliotron;
    case Scenario::radial_modes: return radial;
    case Scenario::chicone_latushkin: return chicone;
    case Scenario::curvature_report: return curvature;
    case Scenario::stretch_analysis: return stretch;
  }
  throw std::logic_error("scenario_schema: unreachable");
}

struct SweepSpec {
  std::string key;
  double start = 0.0;
  double stop = 0.0;
  std::size_t count = 0;  // >= 2
  SweepScale scale = SweepScale::linear;

  double value_at(std::size_t i) const {
    const double f = static_cast<double>(i) / static_cast<double>(count - 1);
    if (scale == SweepScale::log) return std::exp(std::log(start) + f * (std::log(stop) - std::log(start)));
    return start + f * (stop - start);
  }
};

struct ScenarioConfig {
  Scenario scenario = Scenario::radial_modes;
  std::map<std::string, double> parameters;  // fully resolved against the schema
  std::optional<SweepSpec> sweep;
  std::string output;  // empty means stdout
  OutputFormat format = OutputFormat::csv;
};

namespace detail {

inline std::string trim(std::string_view sv) {
  std::size_t a = 0, b = sv.size();
  while (a < b && std::isspace(static_cast<unsigned char>(sv[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(sv[b - 1]))) --b;
  return std::string(sv.substr(a, b - a));
}

inline double parse_number(const std::string& text, const std::string& key, int line) {
  const std::string t = trim(text);
  if (t.empty())
    throw config_error("line " + std::to_string(line) + ": key '" + key + "': empty value");
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || !std::isfinite(v))
    throw config_error("line " + std::to_string(line) + ": key '" + key +
                       "': not a finite number: '" + t + "'");
  return v;
}

struct RawEntry {
  std::string value;
  int line;
};

}  // namespace detail

//! Parses config text. Throws config_error with a line-numbered message on
//! any structural problem.
inline ScenarioConfig parse_config(std::string_view text) {
  std::map<std::string, detail::RawEntry> raw;
  std::optional<Scenario> scenario;
  int scenario_line = 0;

  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw config_error("line " + std::to_string(lineno) + ": malformed scenario header '" +
                           t + "'");
      if (scenario)
        throw config_error("line " + std::to_string(lineno) +
                           ": multiple scenario headers (first at line " +
                           std::to_string(scenario_line) + ")");
      const std::string name = detail::trim(t.substr(1, t.size() - 2));
      scenario = scenario_from_name(name);
      if (!scenario)
        throw config_error("line " + std::to_string(lineno) + ": unknown scenario '" + name +
                           "'");
      scenario_line = lineno;
      continue;
    }
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw config_error("line " + std::to_string(lineno) + ": expected 'key = value', got '" +
                         t + "'");
    const std::string key = detail::trim(t.substr(0, eq));
    const std::string value = detail::trim(t.substr(eq + 1));
    if (key.empty())
      throw config_error("line " + std::to_string(lineno) + ": missing key before '='");
    if (!scenario)
      throw config_error("line " + std::to_string(lineno) +
                         ": key before any [scenario] header");
    if (raw.count(key))
      throw config_error("line " + std::to_string(lineno) + ": duplicate key '" + key +
                         "' (first at line " + std::to_string(raw[key].line) + ")");
    raw[key] = {value, lineno};
  }
  if (!scenario) throw config_error("config has no [scenario] header");

  ScenarioConfig cfg;
  cfg.scenario = *scenario;

  auto take = [&raw](const char* key) -> std::optional<detail::RawEntry> {
    auto it = raw.find(key);
    if (it == raw.end()) return std::nullopt;
    auto entry = it->second;
    raw.erase(it);
    return entry;
  };

  if (auto e = take("output")) cfg.output = e->value;
  if (auto e = take("format")) {
    if (e->value == "csv")
      cfg.format = OutputFormat::csv;
    else if (e->value == "json")
      cfg.format = OutputFormat::json;
    else
      throw config_error("line " + std::to_string(e->line) + ": format must be csv or json, got '" +
                         e->value + "'");
  }

  const auto key_line = [&](const char* key) {
    auto it = raw.find(key);
    return it == raw.end() ? 0 : it->second.line;
  };
  const bool has_sweep = raw.count("sweep_key") || raw.count("sweep_start") ||
                         raw.count("sweep_stop") || raw.count("sweep_count") ||
                         raw.count("sweep_scale");
  if (has_sweep) {
    SweepSpec sweep;
    const int onset = std::max({key_line("sweep_key"), key_line("sweep_start"),
                                key_line("sweep_stop"), key_line("sweep_count"),
                                key_line("sweep_scale")});
    auto need = [&](const char* key) {
      auto e = take(key);
      if (!e)
        throw config_error("line " + std::to_string(onset) + ": sweep block is missing '" +
                           std::string(key) + "'");
      return *e;
    };
    const auto key_entry = need("sweep_key");
    sweep.key = key_entry.value;
    const auto start_entry = need("sweep_start");
    sweep.start = detail::parse_number(start_entry.value, "sweep_start", start_entry.line);
    const auto stop_entry = need("sweep_stop");
    sweep.stop = detail::parse_number(stop_entry.value, "sweep_stop", stop_entry.line);
    const auto count_entry = need("sweep_count");
    const double count = detail::parse_number(count_entry.value, "sweep_count", count_entry.line);
    if (count < 2.0 || count != std::floor(count) || count > 1e7)
      throw config_error("line " + std::to_string(count_entry.line) +
                         ": sweep_count must be an integer >= 2");
    sweep.count = static_cast<std::size_t>(count);
    if (auto e = take("sweep_scale")) {
      if (e->value == "linear")
        sweep.scale = SweepScale::linear;
      else if (e->value == "log")
        sweep.scale = SweepScale::log;
      else
        throw config_error("line " + std::to_string(e->line) +
                           ": sweep_scale must be linear or log, got '" + e->value + "'");
    }
    if (sweep.scale == SweepScale::log && (!(sweep.start > 0.0) || !(sweep.stop > 0.0)))
      throw config_error("line " + std::to_string(start_entry.line) +
                         ": log sweep needs start > 0 and stop > 0");

    // euclidean_fast emits a time series, so its only sweep axis is t; every
    // other scenario sweeps one of its schema parameters
    if (cfg.scenario == Scenario::euclidean_fast) {
      if (sweep.key != "t")
        throw config_error("line " + std::to_string(key_entry.line) +
                           ": scenario 'euclidean_fast' sweeps only 't' (rows are the emitted "
                           "time series)");
    } else {
      const auto& schema = scenario_schema(cfg.scenario);
      bool known = false;
      for (const auto& p : schema) known = known || sweep.key == p.key;
      if (!known)
        throw config_error("line " + std::to_string(key_entry.line) + ": sweep key '" + sweep.key +
                           "' is not a parameter of scenario '" + to_string(cfg.scenario) + "'");
    }
    cfg.sweep = sweep;
  }

  // remaining keys must match the schema; resolve defaults and requireds
  const auto& schema = scenario_schema(cfg.scenario);
  for (const auto& p : schema) {
    if (auto e = take(p.key)) {
      cfg.parameters[p.key] = detail::parse_number(e->value, p.key, e->line);
    } else if (p.required) {
      throw config_error("scenario '" + std::string(to_string(cfg.scenario)) +
                         "' is missing required key '" + p.key + "'");
    } else {
      cfg.parameters[p.key] = p.default_value;
    }
  }
  if (!raw.empty()) {
    const auto& [key, entry] = *raw.begin();
    throw config_error("line " + std::to_string(entry.line) + ": unknown key '" + key +
                       "' for scenario '" + to_string(cfg.scenario) + "'");
  }
  return cfg;
}

//! Reads and parses a config file.
inline ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace tubedyn::config
