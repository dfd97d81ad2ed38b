#pragma once

// Scenario configuration files: one `section.key = value` per line, `#`
// comments. The exact grammar is in docs/config.md.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gase/cognitive_underlay.hpp"
#include "gase/coop_threenode.hpp"
#include "gase/relay_dualhop.hpp"

namespace gase {

enum class ScenarioKind { P2P, DualHop, Coop, Cognitive, XChannel };

const char* to_string(ScenarioKind k);

enum class Spacing { Linear, Log };

struct SweepSpec {
  /// Keys that all take the swept value (e.g. P_S and P_R for a common power).
  std::vector<std::string> parameters;
  double start = 0.0;
  double stop = 0.0;
  std::uint64_t points = 1;
  Spacing spacing = Spacing::Linear;

  std::vector<double> values() const;

  friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

struct ScenarioConfig {
  std::string label;
  ScenarioKind kind = ScenarioKind::P2P;
  std::optional<RelayProtocol> protocol;
  /// Numeric keys by full name ("env.a", "power.p_t_dbm", ...).
  std::map<std::string, double> values;
  std::optional<SweepSpec> sweep;
  std::optional<std::uint64_t> mc_samples;
  std::optional<std::uint64_t> mc_seed;

  /// Throws std::out_of_range for a key that is not set.
  double get(const std::string& key) const;
  bool has(const std::string& key) const { return values.count(key) != 0; }
  /// Copy with every sweep parameter set to `value`.
  ScenarioConfig at_sweep_value(double value) const;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Parses and validates one scenario. Throws ConfigError listing every
/// problem found, each with its line number.
ScenarioConfig parse_config(const std::string& text);

/// Parses `overrides` on top of `base` (keys in `overrides` win) and
/// validates the result. Diagnostics refer to lines of `overrides`.
ScenarioConfig parse_config(const std::string& text, const ScenarioConfig& base);

/// Canonical text form; parse_config(render_config(c)) == c.
std::string render_config(const ScenarioConfig& cfg);

/// Numeric keys a scenario kind accepts.
std::vector<std::string> numeric_keys(ScenarioKind k);

struct Preset {
  std::string name;
  std::string description;
  std::vector<ScenarioConfig> members;
};

const std::vector<Preset>& presets();
/// Throws ConfigError for an unknown name.
const Preset& find_preset(const std::string& name);

// Scenario builders; the config is assumed valid.
P2pScenario to_p2p(const ScenarioConfig& cfg);
DualHopScenario to_dualhop(const ScenarioConfig& cfg);
CoopScenario to_coop(const ScenarioConfig& cfg);
/// Also used for the X-channel kind, with an infinite threshold.
CognitiveScenario to_cognitive(const ScenarioConfig& cfg);

}  // namespace gase
