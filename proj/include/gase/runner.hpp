#pragma once

// Evaluation, sweeps, optimization and oracle verification of a parsed
// scenario, producing CSV tables.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gase/config.hpp"

namespace gase {

struct RunOptions {
  std::optional<std::uint64_t> seed;     // beats mc.seed
  std::optional<std::uint64_t> samples;  // beats mc.samples
  /// Worker threads for sweep points and Monte Carlo chunks. Output does not
  /// depend on it.
  unsigned threads = 1;
};

constexpr std::uint64_t kDefaultSeed = 42;
constexpr std::uint64_t kDefaultSamples = 1'000'000;

std::uint64_t resolve_seed(const ScenarioConfig& cfg, const RunOptions& opt);
std::uint64_t resolve_samples(const ScenarioConfig& cfg, const RunOptions& opt);

using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  /// Header row, then one line per row; numbers as %.11e.
  std::string to_csv() const;
  /// Numeric cell by column name; throws std::out_of_range.
  double number(std::size_t row, const std::string& column) const;
};

/// Closed-form result of one configuration point.
GaseBreakdown evaluate(const ScenarioConfig& cfg);

/// One row at the configuration's own values. If a sweep is configured the
/// first column holds the swept parameter's current value.
Table run_eval(const ScenarioConfig& cfg, const RunOptions& opt = {});

/// One row per sweep value, in sweep order. Without a sweep block this is
/// run_eval.
Table run_sweep(const ScenarioConfig& cfg, const RunOptions& opt = {});

/// p2p (a > 2): the GASE-optimal P_t. dualhop: optimal (P_S, P_R) under
/// power.p_max_dbm. Other kinds throw ConfigError.
Table run_optimize(const ScenarioConfig& cfg, const RunOptions& opt = {});

struct VerifyReport {
  Table table;
  bool passed = true;
};

/// Each closed-form quantity against its Monte Carlo oracle; a quantity
/// fails when |closed_form - oracle_mean| > 3 std_error.
VerifyReport run_verify(const ScenarioConfig& cfg, const RunOptions& opt = {});

}  // namespace gase
