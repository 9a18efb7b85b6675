#include "ospfw/strategy.hpp"

#include <algorithm>
#include <cmath>

#include "ospfw/rng.hpp"

namespace ospfw {

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::kOh: return "OH";
    case Strategy::kFt: return "FT";
    case Strategy::kSs: return "SS";
    case Strategy::kUnit: return "UNIT";
    case Strategy::kInvCap: return "INVCAP";
    case Strategy::kRandom: return "RANDOM";
  }
  return "?";
}

Strategy strategy_from_name(std::string_view name) {
  if (name == "OH") return Strategy::kOh;
  if (name == "FT") return Strategy::kFt;
  if (name == "SS") return Strategy::kSs;
  if (name == "UNIT") return Strategy::kUnit;
  if (name == "INVCAP") return Strategy::kInvCap;
  if (name == "RANDOM") return Strategy::kRandom;
  fail(ErrorCode::kConfigError, "unknown strategy '" + std::string(name) + "'");
}

std::pair<NodeId, NodeId> select_critical_pair(const DemandMatrix& dm) {
  if (dm.entries().empty())
    fail(ErrorCode::kEmptyDemand, "demand matrix has no positive entries");
  // Entries are sorted by (src, dst), so pair sums accumulate in
  // lexicographic order and strict improvement keeps the smallest pair.
  std::pair<NodeId, NodeId> best{0, 0};
  double best_sum = -1.0;
  for (const auto& e : dm.entries()) {
    const NodeId lo = std::min(e.src, e.dst);
    const NodeId hi = std::max(e.src, e.dst);
    const double sum = dm.at(lo, hi) + dm.at(hi, lo);
    if (sum > best_sum ||
        (sum == best_sum && std::make_pair(lo, hi) < best)) {
      best_sum = sum;
      best = {lo, hi};
    }
  }
  return best;
}

namespace {

uint64_t scenario_fingerprint(const Topology& t_norm, const DemandMatrix& dm,
                              LinkId failed) {
  uint64_t state = 0x6f737066u;  // arbitrary fixed stream
  uint64_t h = splitmix64(state);
  auto absorb = [&](uint64_t v) {
    state = h ^ v;
    h = splitmix64(state);
  };
  auto absorb_double = [&](double d) {
    uint64_t bits;
    static_assert(sizeof(bits) == sizeof(d));
    __builtin_memcpy(&bits, &d, sizeof(bits));
    absorb(bits);
  };
  absorb(t_norm.node_count());
  for (const Arc& a : t_norm.arcs()) {
    absorb((static_cast<uint64_t>(a.src) << 32) | a.dst);
    absorb_double(a.capacity);
  }
  for (const auto& e : dm.entries()) {
    absorb((static_cast<uint64_t>(e.src) << 32) | e.dst);
    absorb_double(e.value);
  }
  absorb((static_cast<uint64_t>(failed.lo) << 32) | failed.hi);
  return h;
}

}  // namespace

FailureScenario build_scenario(const Topology& base, const DemandMatrix& dm,
                               double added_capacity) {
  const auto [u, v] = select_critical_pair(dm);
  if (base.find_arc(u, v) >= 0 || base.find_arc(v, u) >= 0)
    fail(ErrorCode::kPairAlreadyLinked,
         "critical pair " + std::to_string(u) + "-" + std::to_string(v) +
             " is already directly linked");
  double capacity = added_capacity;
  if (capacity <= 0.0) {
    capacity = base.max_capacity();
    if (capacity <= 0.0)
      fail(ErrorCode::kBadParams,
           "base topology has no arcs to derive a capacity from");
  }
  AddLinkResult added = add_link(base, u, v, capacity);

  auto report_unroutable = [](const std::vector<std::pair<NodeId, NodeId>>& bad,
                              const char* state) {
    if (!bad.empty())
      fail(ErrorCode::kUnroutableDemand,
           std::string("demand ") + std::to_string(bad.front().first) + "->" +
               std::to_string(bad.front().second) + " unroutable in " + state +
               " state");
  };
  report_unroutable(check_connectivity(base, dm), "failure");
  report_unroutable(check_connectivity(added.topology, dm), "normal");

  FailureScenario sc{std::move(added.topology),
                     base,
                     LinkId::of(u, v),
                     {added.first_added_arc, added.first_added_arc + 1},
                     dm,
                     0.0,
                     0};
  sc.uncap = uncap_cost(sc.t_norm, dm);
  sc.fingerprint = scenario_fingerprint(sc.t_norm, dm, sc.failed_link);
  return sc;
}

// --- paired evaluation ------------------------------------------------------

PairEvaluator::PairEvaluator(const FailureScenario& sc)
    : sc_(sc), norm_flow_(sc.t_norm), fail_flow_(sc.t_fail) {
  fail_weights_.values.resize(sc.t_fail.arc_count());
}

double PairEvaluator::normal_cost(const WeightVector& w) {
  const auto& totals = norm_flow_.totals(w, sc_.demands);
  return cost_of_totals(totals, sc_.t_norm).total / sc_.uncap;
}

double PairEvaluator::failed_cost(const WeightVector& w) {
  fail_weights_.w_max = w.w_max;
  std::copy_n(w.values.begin(), fail_weights_.values.size(),
              fail_weights_.values.begin());
  const auto& totals = fail_flow_.totals(fail_weights_, sc_.demands);
  return cost_of_totals(totals, sc_.t_fail).total / sc_.uncap;
}

PairedEvaluation PairEvaluator::both(const WeightVector& w) {
  PairedEvaluation pe;
  pe.normal_cost = normal_cost(w);
  pe.failed_cost = failed_cost(w);
  pe.averaged_cost = (pe.normal_cost + pe.failed_cost) / 2.0;
  return pe;
}

PairedEvaluation evaluate_pair(const FailureScenario& sc,
                               const WeightVector& w) {
  validate_weights(w, sc.t_norm);
  PairEvaluator pe(sc);
  return pe.both(w);
}

// --- strategies -------------------------------------------------------------

StrategyResult run_oh(const FailureScenario& sc, const TabuParams& params,
                      int w_max) {
  PairEvaluator pe(sc);
  const WeightVector initial = random_initial(sc.t_norm, w_max, params.seed);
  SearchResult sr = tabu_search(
      [&](const WeightVector& w) { return pe.normal_cost(w); }, initial,
      params);

  StrategyResult out;
  out.strategy = Strategy::kOh;
  out.weights = std::move(sr.best);
  out.cost_norm = sr.best_cost;
  out.cost_fail = pe.failed_cost(out.weights);
  out.objective = sr.best_cost;
  out.trace = std::move(sr.trace);
  out.params = params;
  out.scenario_fingerprint = sc.fingerprint;
  return out;
}

StrategyResult run_ft(const FailureScenario& sc, const TabuParams& params,
                      int w_max) {
  PairEvaluator pe(sc);
  const WeightVector initial = random_initial(sc.t_norm, w_max, params.seed);
  SearchResult sr = tabu_search(
      [&](const WeightVector& w) { return pe.both(w).averaged_cost; }, initial,
      params);

  StrategyResult out;
  out.strategy = Strategy::kFt;
  out.weights = std::move(sr.best);
  const PairedEvaluation best = pe.both(out.weights);
  out.cost_norm = best.normal_cost;
  out.cost_fail = best.failed_cost;
  out.objective = sr.best_cost;
  out.trace = std::move(sr.trace);
  out.params = params;
  out.scenario_fingerprint = sc.fingerprint;
  return out;
}

StrategyResult run_ss(const FailureScenario& sc, const TabuParams& params,
                      int w_max) {
  PairEvaluator pe(sc);
  FlowComputer fail_flow(sc.t_fail);
  const WeightVector initial = random_initial(sc.t_fail, w_max, params.seed);
  SearchResult sr = tabu_search(
      [&](const WeightVector& w) {
        return cost_of_totals(fail_flow.totals(w, sc.demands), sc.t_fail)
                   .total /
               sc.uncap;
      },
      initial, params);

  // Transfer the surviving weights and sweep the restored link's shared
  // weight across the whole range.
  WeightVector full;
  full.w_max = w_max;
  full.values = sr.best.values;
  full.values.push_back(1);
  full.values.push_back(1);

  int best_weight = 0;
  double best_norm = 0.0;
  for (int w = 1; w <= w_max; ++w) {
    full.values[sc.added_arcs[0]] = w;
    full.values[sc.added_arcs[1]] = w;
    const double cost = pe.normal_cost(full);
    if (best_weight == 0 || cost < best_norm) {
      best_weight = w;
      best_norm = cost;
    }
  }
  full.values[sc.added_arcs[0]] = best_weight;
  full.values[sc.added_arcs[1]] = best_weight;

  StrategyResult out;
  out.strategy = Strategy::kSs;
  out.weights = std::move(full);
  out.cost_norm = best_norm;
  out.cost_fail = sr.best_cost;
  out.objective = sr.best_cost;
  out.trace = std::move(sr.trace);
  out.params = params;
  out.scenario_fingerprint = sc.fingerprint;
  out.ss_added_weight = best_weight;
  return out;
}

WeightVector baseline_weights(const Topology& topo, Strategy kind, int w_max,
                              uint64_t seed) {
  if (w_max < 1) fail(ErrorCode::kBadParams, "w_max must be >= 1");
  WeightVector w;
  w.w_max = w_max;
  w.values.resize(topo.arc_count(), 1);
  switch (kind) {
    case Strategy::kUnit:
      break;
    case Strategy::kInvCap: {
      const double c_max = topo.max_capacity();
      for (uint32_t a = 0; a < topo.arc_count(); ++a) {
        const long v = std::lround(c_max / topo.arc(a).capacity);
        w.values[a] = static_cast<int>(std::clamp<long>(v, 1, w_max));
      }
      break;
    }
    case Strategy::kRandom:
      w = random_initial(topo, w_max, seed);
      break;
    default:
      fail(ErrorCode::kBadParams, "not a baseline weighting");
  }
  return w;
}

StrategyResult run_baseline(const FailureScenario& sc, Strategy kind,
                            int w_max, uint64_t seed) {
  StrategyResult out;
  out.strategy = kind;
  out.weights = baseline_weights(sc.t_norm, kind, w_max, seed);
  const PairedEvaluation pe = evaluate_pair(sc, out.weights);
  out.cost_norm = pe.normal_cost;
  out.cost_fail = pe.failed_cost;
  out.objective = pe.normal_cost;
  out.trace.initial_cost = pe.normal_cost;
  out.scenario_fingerprint = sc.fingerprint;
  return out;
}

DeltaReport delta_report(const StrategyResult& oh,
                         const StrategyResult& challenger) {
  if (oh.scenario_fingerprint != challenger.scenario_fingerprint)
    fail(ErrorCode::kScenarioMismatch,
         "results come from different scenarios");
  DeltaReport d;
  d.delta_norm = oh.cost_norm - challenger.cost_norm;
  d.delta_fail = oh.cost_fail - challenger.cost_fail;
  d.delta = d.delta_norm + d.delta_fail;
  return d;
}

}  // namespace ospfw
