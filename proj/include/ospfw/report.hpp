#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ospfw/gen.hpp"
#include "ospfw/strategy.hpp"

namespace ospfw {

enum class Comparison { kFtVsOh, kSsVsOh, kFtVsSs };
enum class TableFormat { kCsv, kMarkdown };
enum class TablePrecision { k3dp, kSig6 };

const char* comparison_name(Comparison c);
Comparison comparison_from_name(std::string_view name);

struct ExperimentConfig {
  // Instance source: either files or generation specs.
  std::string topology_file;
  std::string demands_file;
  std::optional<GenSpec> gen;
  std::optional<DemandSpec> demand_spec;

  // Applied to the base demands before the scale ladder.
  double demand_multiplier = 1.0;
  double scale_base = 1.4142135623730951;  // sqrt(2)
  std::vector<int> scales = {8, 9, 10, 11, 12};

  std::vector<Strategy> strategies = {Strategy::kOh, Strategy::kFt,
                                      Strategy::kSs};
  bool deltas = true;  // emit OH-vs-challenger delta rows

  TabuParams tabu;     // tabu.seed is ignored; per-run seeds derive from seed
  uint64_t seed = 1;
  int w_max = 20;
  double added_link_capacity = 0.0;  // <= 0: largest existing capacity
  int parallelism = 1;

  TableFormat table_format = TableFormat::kCsv;
  TablePrecision table_precision = TablePrecision::k3dp;
};

struct RunRecord {
  int scale = 0;
  Strategy strategy = Strategy::kOh;
  bool ok = false;
  std::string error;  // set when ok is false
  StrategyResult result;
  double wall_ms = 0.0;
};

struct DeltaRecord {
  int scale = 0;
  Strategy challenger = Strategy::kFt;
  DeltaReport deltas;
};

struct ExperimentReport {
  ExperimentConfig config;
  uint32_t nodes = 0;
  uint32_t arcs_normal = 0;  // arc count of the normal state
  NodeId critical_lo = 0, critical_hi = 0;
  double added_capacity = 0.0;
  std::vector<RunRecord> runs;      // ordered by (scale, strategy)
  std::vector<DeltaRecord> deltas;  // ordered by (scale, challenger)
};

// Runs every (scale, strategy) cell. A single failed run is recorded in
// its RunRecord, not fatal. Deterministic given config.seed.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

// One comparison table. CSV header:
//   D,<X>_N,OH_N,delta_N,<X>_F,OH_F,delta_F,delta
// or for FT vs SS: D,FT_N,SS_N,FT_F,SS_F. Delta columns are computed at
// full precision and only then rounded for display.
std::string emit_table(const ExperimentReport& report, TableFormat format,
                       Comparison comparison, TablePrecision precision);

// "iteration,best_cost" CSV; row 0 is the initial solution.
std::string emit_trace(const ExperimentReport& report, int scale,
                       Strategy strategy);

// Line-oriented key=value description sufficient to re-run the experiment.
std::string emit_manifest(const ExperimentConfig& cfg);
ExperimentConfig parse_manifest(const std::string& text);

std::string config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const std::string& json_text);

std::string report_to_json(const ExperimentReport& report);
ExperimentReport report_from_json(const std::string& json_text);

uint64_t run_seed(uint64_t master_seed, int scale, Strategy strategy);

}  // namespace ospfw
