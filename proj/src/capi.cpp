#include "ospfw/ospfw.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "json.hpp"
#include "ospfw/cost.hpp"
#include "ospfw/format.hpp"
#include "ospfw/gen.hpp"
#include "ospfw/report.hpp"
#include "ospfw/strategy.hpp"
#include "ospfw/tabu.hpp"

using ospfw::Error;
using ospfw::ErrorCode;

struct ospfw_topology {
  ospfw::Topology value;
};
struct ospfw_demands {
  ospfw::DemandMatrix value;
};
struct ospfw_weights {
  ospfw::WeightVector value;
};
struct ospfw_scenario {
  ospfw::FailureScenario value;
};
struct ospfw_result {
  ospfw::StrategyResult value;
};

namespace {

thread_local std::string g_last_error;

ospfw_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedInput: return OSPFW_ERR_MALFORMED_INPUT;
    case ErrorCode::kNodeOutOfRange: return OSPFW_ERR_NODE_OUT_OF_RANGE;
    case ErrorCode::kDuplicateArc: return OSPFW_ERR_DUPLICATE_ARC;
    case ErrorCode::kNonPositiveCapacity: return OSPFW_ERR_NON_POSITIVE_CAPACITY;
    case ErrorCode::kNegativeDemand: return OSPFW_ERR_NEGATIVE_DEMAND;
    case ErrorCode::kSelfDemand: return OSPFW_ERR_SELF_DEMAND;
    case ErrorCode::kSelfLoop: return OSPFW_ERR_SELF_LOOP;
    case ErrorCode::kUnknownLink: return OSPFW_ERR_UNKNOWN_LINK;
    case ErrorCode::kBadWeight: return OSPFW_ERR_BAD_WEIGHT;
    case ErrorCode::kBadParams: return OSPFW_ERR_BAD_PARAMS;
    case ErrorCode::kUnroutableDemand: return OSPFW_ERR_UNROUTABLE_DEMAND;
    case ErrorCode::kZeroUncap: return OSPFW_ERR_ZERO_UNCAP;
    case ErrorCode::kEmptyDemand: return OSPFW_ERR_EMPTY_DEMAND;
    case ErrorCode::kPairAlreadyLinked: return OSPFW_ERR_PAIR_ALREADY_LINKED;
    case ErrorCode::kScenarioMismatch: return OSPFW_ERR_SCENARIO_MISMATCH;
    case ErrorCode::kTooLarge: return OSPFW_ERR_TOO_LARGE;
    case ErrorCode::kUnconnectable: return OSPFW_ERR_UNCONNECTABLE;
    case ErrorCode::kMissingStrategy: return OSPFW_ERR_MISSING_STRATEGY;
    case ErrorCode::kMissingTrace: return OSPFW_ERR_MISSING_TRACE;
    case ErrorCode::kConfigError: return OSPFW_ERR_CONFIG;
    case ErrorCode::kIoError: return OSPFW_ERR_IO;
  }
  return OSPFW_ERR_INTERNAL;
}

template <typename Fn>
ospfw_status guarded(Fn&& fn) {
  try {
    fn();
    return OSPFW_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return OSPFW_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return OSPFW_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ospfw_status require(bool ok, const char* what) {
  if (ok) return OSPFW_OK;
  g_last_error = std::string("null argument: ") + what;
  return OSPFW_ERR_BAD_PARAMS;
}

ospfw::TabuParams to_params(const ospfw_tabu_params* p) {
  ospfw::TabuParams out;
  if (p) {
    out.max_iterations = p->max_iterations;
    out.stall_limit = p->stall_limit;
    out.tenure = p->tenure;
    out.neighborhood_samples = p->neighborhood_samples;
    out.seed = p->seed;
  }
  return out;
}

std::string trace_csv(const ospfw::SearchTrace& trace) {
  std::string out = "iteration,best_cost\n";
  out += "0," + ospfw::fmt_shortest(trace.initial_cost) + "\n";
  for (const auto& e : trace.entries)
    out += std::to_string(e.iteration) + "," + ospfw::fmt_shortest(e.best_cost) +
           "\n";
  return out;
}

}  // namespace

extern "C" {

const char* ospfw_version(void) { return "0.1.0"; }

const char* ospfw_last_error(void) { return g_last_error.c_str(); }

void ospfw_string_free(char* s) { std::free(s); }

ospfw_status ospfw_topology_parse(const char* text, ospfw_topology** out) {
  if (auto st = require(text && out, "text/out")) return st;
  return guarded([&] {
    *out = new ospfw_topology{ospfw::parse_topology(text)};
  });
}

ospfw_status ospfw_topology_serialize(const ospfw_topology* topo, char** out) {
  if (auto st = require(topo && out, "topo/out")) return st;
  return guarded([&] { *out = dup_string(ospfw::serialize_topology(topo->value)); });
}

unsigned ospfw_topology_node_count(const ospfw_topology* topo) {
  return topo ? topo->value.node_count() : 0;
}

unsigned ospfw_topology_arc_count(const ospfw_topology* topo) {
  return topo ? topo->value.arc_count() : 0;
}

void ospfw_topology_free(ospfw_topology* topo) { delete topo; }

ospfw_status ospfw_demands_parse(const char* text, const ospfw_topology* topo,
                                 ospfw_demands** out) {
  if (auto st = require(text && topo && out, "text/topo/out")) return st;
  return guarded([&] {
    *out = new ospfw_demands{ospfw::parse_demands(text, topo->value)};
  });
}

ospfw_status ospfw_demands_serialize(const ospfw_demands* dm, char** out) {
  if (auto st = require(dm && out, "dm/out")) return st;
  return guarded([&] { *out = dup_string(ospfw::serialize_demands(dm->value)); });
}

ospfw_status ospfw_demands_scale(const ospfw_demands* dm, double factor,
                                 ospfw_demands** out) {
  if (auto st = require(dm && out, "dm/out")) return st;
  return guarded([&] { *out = new ospfw_demands{dm->value.scaled(factor)}; });
}

void ospfw_demands_free(ospfw_demands* dm) { delete dm; }

ospfw_status ospfw_weights_parse(const char* text, const ospfw_topology* topo,
                                 int w_max, ospfw_weights** out) {
  if (auto st = require(text && topo && out, "text/topo/out")) return st;
  return guarded([&] {
    *out = new ospfw_weights{ospfw::parse_weights(text, topo->value, w_max)};
  });
}

ospfw_status ospfw_weights_serialize(const ospfw_weights* w, char** out) {
  if (auto st = require(w && out, "w/out")) return st;
  return guarded([&] { *out = dup_string(ospfw::serialize_weights(w->value)); });
}

ospfw_status ospfw_weights_random(const ospfw_topology* topo, int w_max,
                                  unsigned long long seed,
                                  ospfw_weights** out) {
  if (auto st = require(topo && out, "topo/out")) return st;
  return guarded([&] {
    *out = new ospfw_weights{ospfw::random_initial(topo->value, w_max, seed)};
  });
}

ospfw_status ospfw_weights_baseline(const ospfw_topology* topo,
                                    const char* kind, int w_max,
                                    unsigned long long seed,
                                    ospfw_weights** out) {
  if (auto st = require(topo && kind && out, "topo/kind/out")) return st;
  return guarded([&] {
    *out = new ospfw_weights{ospfw::baseline_weights(
        topo->value, ospfw::strategy_from_name(kind), w_max, seed)};
  });
}

void ospfw_weights_free(ospfw_weights* w) { delete w; }

ospfw_status ospfw_evaluate(const ospfw_topology* topo,
                            const ospfw_demands* dm, const ospfw_weights* w,
                            int step_cost_model, ospfw_cost_report* out) {
  if (auto st = require(topo && dm && w && out, "topo/dm/w/out")) return st;
  return guarded([&] {
    const ospfw::CostReport report = ospfw::evaluate(
        topo->value, w->value, dm->value,
        step_cost_model ? ospfw::CostKind::kStep
                        : ospfw::CostKind::kPiecewiseLinear);
    out->total_cost = report.total;
    out->normalized_cost = report.normalized;
    out->max_utilization = report.max_utilization;
  });
}

ospfw_status ospfw_optimize(const ospfw_topology* topo,
                            const ospfw_demands* dm,
                            const ospfw_tabu_params* params, int w_max,
                            ospfw_weights** best_out, double* best_cost_out,
                            char** trace_csv_out) {
  if (auto st = require(topo && dm && best_out && best_cost_out,
                        "topo/dm/best_out/best_cost_out"))
    return st;
  return guarded([&] {
    const ospfw::TabuParams p = to_params(params);
    const double uncap = ospfw::uncap_cost(topo->value, dm->value);
    if (!(uncap > 0.0))
      ospfw::fail(ErrorCode::kZeroUncap, "no demand to optimize for");
    ospfw::FlowComputer flow(topo->value);
    const ospfw::WeightVector initial =
        ospfw::random_initial(topo->value, w_max, p.seed);
    ospfw::SearchResult sr = ospfw::tabu_search(
        [&](const ospfw::WeightVector& cand) {
          return ospfw::cost_of_totals(flow.totals(cand, dm->value),
                                       topo->value)
                     .total /
                 uncap;
        },
        initial, p);
    *best_out = new ospfw_weights{std::move(sr.best)};
    *best_cost_out = sr.best_cost;
    if (trace_csv_out) *trace_csv_out = dup_string(trace_csv(sr.trace));
  });
}

ospfw_status ospfw_scenario_build(const ospfw_topology* base,
                                  const ospfw_demands* dm,
                                  double added_capacity, ospfw_scenario** out) {
  if (auto st = require(base && dm && out, "base/dm/out")) return st;
  return guarded([&] {
    *out = new ospfw_scenario{
        ospfw::build_scenario(base->value, dm->value, added_capacity)};
  });
}

ospfw_status ospfw_scenario_info(const ospfw_scenario* sc, unsigned* crit_lo,
                                 unsigned* crit_hi, double* added_capacity) {
  if (auto st = require(sc != nullptr, "sc")) return st;
  if (crit_lo) *crit_lo = sc->value.failed_link.lo;
  if (crit_hi) *crit_hi = sc->value.failed_link.hi;
  if (added_capacity)
    *added_capacity = sc->value.t_norm.arc(sc->value.added_arcs[0]).capacity;
  return OSPFW_OK;
}

void ospfw_scenario_free(ospfw_scenario* sc) { delete sc; }

ospfw_status ospfw_scenario_run(const ospfw_scenario* sc, const char* strategy,
                                const ospfw_tabu_params* params, int w_max,
                                ospfw_result** out) {
  if (auto st = require(sc && strategy && out, "sc/strategy/out")) return st;
  return guarded([&] {
    const ospfw::Strategy s = ospfw::strategy_from_name(strategy);
    const ospfw::TabuParams p = to_params(params);
    ospfw::StrategyResult result;
    switch (s) {
      case ospfw::Strategy::kOh: result = ospfw::run_oh(sc->value, p, w_max); break;
      case ospfw::Strategy::kFt: result = ospfw::run_ft(sc->value, p, w_max); break;
      case ospfw::Strategy::kSs: result = ospfw::run_ss(sc->value, p, w_max); break;
      default: result = ospfw::run_baseline(sc->value, s, w_max, p.seed); break;
    }
    *out = new ospfw_result{std::move(result)};
  });
}

ospfw_status ospfw_result_costs(const ospfw_result* r, double* cost_norm,
                                double* cost_fail, double* objective) {
  if (auto st = require(r != nullptr, "r")) return st;
  if (cost_norm) *cost_norm = r->value.cost_norm;
  if (cost_fail) *cost_fail = r->value.cost_fail;
  if (objective) *objective = r->value.objective;
  return OSPFW_OK;
}

ospfw_status ospfw_result_weights(const ospfw_result* r, ospfw_weights** out) {
  if (auto st = require(r && out, "r/out")) return st;
  return guarded([&] { *out = new ospfw_weights{r->value.weights}; });
}

ospfw_status ospfw_result_trace_csv(const ospfw_result* r, char** out) {
  if (auto st = require(r && out, "r/out")) return st;
  return guarded([&] { *out = dup_string(trace_csv(r->value.trace)); });
}

void ospfw_result_free(ospfw_result* r) { delete r; }

ospfw_status ospfw_delta(const ospfw_result* oh, const ospfw_result* challenger,
                         double* delta_norm, double* delta_fail,
                         double* delta_total) {
  if (auto st = require(oh && challenger, "oh/challenger")) return st;
  return guarded([&] {
    const ospfw::DeltaReport d =
        ospfw::delta_report(oh->value, challenger->value);
    if (delta_norm) *delta_norm = d.delta_norm;
    if (delta_fail) *delta_fail = d.delta_fail;
    if (delta_total) *delta_total = d.delta;
  });
}

ospfw_status ospfw_gen_topology(const char* genspec_json,
                                ospfw_topology** out) {
  if (auto st = require(genspec_json && out, "genspec/out")) return st;
  return guarded([&] {
    nlohmann::json j = nlohmann::json::parse(genspec_json, nullptr, false);
    if (j.is_discarded())
      ospfw::fail(ErrorCode::kConfigError, "gen spec is not valid JSON");
    ospfw::GenSpec spec;
    spec.family = ospfw::family_from_name(j.value("family", "RANDOM"));
    spec.node_count = j.value("node_count", 50u);
    spec.target_arc_count = j.value("target_arc_count", 0u);
    spec.edge_probability = j.value("edge_probability", 0.0);
    spec.waxman_alpha = j.value("waxman_alpha", 0.0);
    spec.waxman_beta = j.value("waxman_beta", 0.6);
    if (j.contains("capacity_levels"))
      spec.capacity_levels = j.at("capacity_levels").get<std::vector<double>>();
    spec.seed = j.value("seed", 1ull);
    *out = new ospfw_topology{ospfw::gen_topology(spec)};
  });
}

ospfw_status ospfw_gen_demands(const ospfw_topology* topo,
                               const char* demandspec_json,
                               ospfw_demands** out) {
  if (auto st = require(topo && demandspec_json && out, "topo/spec/out"))
    return st;
  return guarded([&] {
    nlohmann::json j = nlohmann::json::parse(demandspec_json, nullptr, false);
    if (j.is_discarded())
      ospfw::fail(ErrorCode::kConfigError, "demand spec is not valid JSON");
    ospfw::DemandSpec spec;
    spec.base_seed = j.value("base_seed", 1ull);
    spec.scale_index = j.value("scale_index", 0);
    spec.scale_base = j.value("scale_base", 1.4142135623730951);
    spec.density = j.value("density", 0.3);
    spec.magnitude = j.value("magnitude", 1.0);
    *out = new ospfw_demands{ospfw::gen_demands(topo->value, spec)};
  });
}

ospfw_status ospfw_preset_genspec(const char* name, unsigned long long seed,
                                  char** genspec_json_out) {
  if (auto st = require(name && genspec_json_out, "name/out")) return st;
  return guarded([&] {
    const ospfw::GenSpec spec = ospfw::preset_spec(name, seed);
    nlohmann::json j{{"family", ospfw::family_name(spec.family)},
                     {"node_count", spec.node_count},
                     {"target_arc_count", spec.target_arc_count},
                     {"edge_probability", spec.edge_probability},
                     {"waxman_alpha", spec.waxman_alpha},
                     {"waxman_beta", spec.waxman_beta},
                     {"capacity_levels", spec.capacity_levels},
                     {"seed", spec.seed}};
    *genspec_json_out = dup_string(j.dump(2));
  });
}

ospfw_status ospfw_experiment_run(const char* config_json,
                                  char** report_json_out) {
  if (auto st = require(config_json && report_json_out, "config/out"))
    return st;
  return guarded([&] {
    const ospfw::ExperimentConfig cfg = ospfw::config_from_json(config_json);
    const ospfw::ExperimentReport report = ospfw::run_experiment(cfg);
    *report_json_out = dup_string(ospfw::report_to_json(report));
  });
}

ospfw_status ospfw_report_table(const char* report_json, const char* comparison,
                                const char* format, int sig6, char** out) {
  if (auto st = require(report_json && comparison && format && out,
                        "report/comparison/format/out"))
    return st;
  return guarded([&] {
    const ospfw::ExperimentReport report =
        ospfw::report_from_json(report_json);
    const ospfw::TableFormat fmt = std::string_view(format) == "markdown"
                                       ? ospfw::TableFormat::kMarkdown
                                       : ospfw::TableFormat::kCsv;
    *out = dup_string(ospfw::emit_table(
        report, fmt, ospfw::comparison_from_name(comparison),
        sig6 ? ospfw::TablePrecision::kSig6 : ospfw::TablePrecision::k3dp));
  });
}

ospfw_status ospfw_report_trace(const char* report_json, int scale,
                                const char* strategy, char** out) {
  if (auto st = require(report_json && strategy && out, "report/strategy/out"))
    return st;
  return guarded([&] {
    const ospfw::ExperimentReport report =
        ospfw::report_from_json(report_json);
    *out = dup_string(ospfw::emit_trace(
        report, scale, ospfw::strategy_from_name(strategy)));
  });
}

ospfw_status ospfw_manifest_from_config(const char* config_json,
                                        char** manifest_out) {
  if (auto st = require(config_json && manifest_out, "config/out")) return st;
  return guarded([&] {
    *manifest_out = dup_string(
        ospfw::emit_manifest(ospfw::config_from_json(config_json)));
  });
}

ospfw_status ospfw_config_from_manifest(const char* manifest_text,
                                        char** config_json_out) {
  if (auto st = require(manifest_text && config_json_out, "manifest/out"))
    return st;
  return guarded([&] {
    *config_json_out = dup_string(
        ospfw::config_to_json(ospfw::parse_manifest(manifest_text)));
  });
}

}  // extern "C"
