#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <utility>

#include "ospfw/cost.hpp"
#include "ospfw/net.hpp"
#include "ospfw/tabu.hpp"

namespace ospfw {

enum class Strategy { kOh, kFt, kSs, kUnit, kInvCap, kRandom };

const char* strategy_name(Strategy s);
Strategy strategy_from_name(std::string_view name);

// Paired normal/failure topologies sharing one demand matrix. t_norm is
// t_fail plus one restored link between the highest-demand node pair; the
// added arcs sit at the end of t_norm's arc list, so the surviving weights
// of a t_norm vector are simply its first t_fail.arc_count() entries.
struct FailureScenario {
  Topology t_norm;
  Topology t_fail;
  LinkId failed_link;
  std::array<uint32_t, 2> added_arcs;  // indices in t_norm
  DemandMatrix demands;
  double uncap = 0.0;      // min-hop cost on t_norm; both states normalize by it
  uint64_t fingerprint = 0;
};

// Unordered pair maximizing D(u,v) + D(v,u); ties to the lexicographically
// smallest (min id, max id) pair.
std::pair<NodeId, NodeId> select_critical_pair(const DemandMatrix& dm);

// base becomes the failure state; the normal state adds a link between the
// critical pair. added_capacity <= 0 selects the default policy: the
// largest capacity among base's arcs.
FailureScenario build_scenario(const Topology& base, const DemandMatrix& dm,
                               double added_capacity = 0.0);

struct PairedEvaluation {
  double normal_cost = 0.0;    // normalized cost on t_norm
  double failed_cost = 0.0;    // normalized cost on t_fail, surviving weights
  double averaged_cost = 0.0;  // (normal_cost + failed_cost) / 2
};

PairedEvaluation evaluate_pair(const FailureScenario& sc,
                               const WeightVector& w);

// Reusable paired evaluator for search loops.
class PairEvaluator {
 public:
  explicit PairEvaluator(const FailureScenario& sc);

  double normal_cost(const WeightVector& w);
  double failed_cost(const WeightVector& w);  // w on t_norm; restricted here
  PairedEvaluation both(const WeightVector& w);

 private:
  const FailureScenario& sc_;
  FlowComputer norm_flow_;
  FlowComputer fail_flow_;
  WeightVector fail_weights_;
};

struct StrategyResult {
  Strategy strategy = Strategy::kOh;
  WeightVector weights;        // on t_norm
  double cost_norm = 0.0;
  double cost_fail = 0.0;
  double objective = 0.0;      // best value of the strategy's own objective
  SearchTrace trace;
  TabuParams params;
  uint64_t scenario_fingerprint = 0;
  int ss_added_weight = 0;     // weight chosen for the restored link (SS only)
};

// Tabu search on the normal state only; the winner is then re-scored on
// the failure state.
StrategyResult run_oh(const FailureScenario& sc, const TabuParams& params,
                      int w_max = 20);

// Tabu search minimizing the average of both states' costs.
StrategyResult run_ft(const FailureScenario& sc, const TabuParams& params,
                      int w_max = 20);

// Tabu search on the failure state, then the restored link's shared weight
// swept over 1..w_max for the normal state.
StrategyResult run_ss(const FailureScenario& sc, const TabuParams& params,
                      int w_max = 20);

// UNIT / INVCAP / RANDOM weightings.
WeightVector baseline_weights(const Topology& topo, Strategy kind, int w_max,
                              uint64_t seed);

// Fixed-weight baseline evaluated on both states.
StrategyResult run_baseline(const FailureScenario& sc, Strategy kind,
                            int w_max, uint64_t seed);

struct DeltaReport {
  double delta_norm = 0.0;  // OH normal cost - challenger normal cost
  double delta_fail = 0.0;  // OH failure cost - challenger failure cost
  double delta = 0.0;       // delta_norm + delta_fail
};

DeltaReport delta_report(const StrategyResult& oh,
                         const StrategyResult& challenger);

}  // namespace ospfw
