/* C interface to the OSPF weight-setting engine.
 *
 * All functions return OSPFW_OK on success. On failure they return an
 * error code and leave a human-readable detail string retrievable via
 * ospfw_last_error() (thread-local, valid until the next failing call on
 * the same thread). Strings returned through char** out-params are
 * malloc'd by the library and must be released with ospfw_string_free().
 * Handles are opaque and must be released with their *_free function.
 */
#ifndef OSPFW_H
#define OSPFW_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ospfw_status {
  OSPFW_OK = 0,
  OSPFW_ERR_MALFORMED_INPUT,
  OSPFW_ERR_NODE_OUT_OF_RANGE,
  OSPFW_ERR_DUPLICATE_ARC,
  OSPFW_ERR_NON_POSITIVE_CAPACITY,
  OSPFW_ERR_NEGATIVE_DEMAND,
  OSPFW_ERR_SELF_DEMAND,
  OSPFW_ERR_SELF_LOOP,
  OSPFW_ERR_UNKNOWN_LINK,
  OSPFW_ERR_BAD_WEIGHT,
  OSPFW_ERR_BAD_PARAMS,
  OSPFW_ERR_UNROUTABLE_DEMAND,
  OSPFW_ERR_ZERO_UNCAP,
  OSPFW_ERR_EMPTY_DEMAND,
  OSPFW_ERR_PAIR_ALREADY_LINKED,
  OSPFW_ERR_SCENARIO_MISMATCH,
  OSPFW_ERR_TOO_LARGE,
  OSPFW_ERR_UNCONNECTABLE,
  OSPFW_ERR_MISSING_STRATEGY,
  OSPFW_ERR_MISSING_TRACE,
  OSPFW_ERR_CONFIG,
  OSPFW_ERR_IO,
  OSPFW_ERR_INTERNAL
} ospfw_status;

typedef struct ospfw_topology ospfw_topology;
typedef struct ospfw_demands ospfw_demands;
typedef struct ospfw_weights ospfw_weights;
typedef struct ospfw_scenario ospfw_scenario;
typedef struct ospfw_result ospfw_result;

const char* ospfw_version(void);
const char* ospfw_last_error(void);
void ospfw_string_free(char* s);

/* --- topology: "nodes N" / "arc src dst capacity" text format --------- */
ospfw_status ospfw_topology_parse(const char* text, ospfw_topology** out);
ospfw_status ospfw_topology_serialize(const ospfw_topology* topo, char** out);
unsigned ospfw_topology_node_count(const ospfw_topology* topo);
unsigned ospfw_topology_arc_count(const ospfw_topology* topo);
void ospfw_topology_free(ospfw_topology* topo);

/* --- demands: "demand src dst value" text format ----------------------- */
ospfw_status ospfw_demands_parse(const char* text, const ospfw_topology* topo,
                                 ospfw_demands** out);
ospfw_status ospfw_demands_serialize(const ospfw_demands* dm, char** out);
ospfw_status ospfw_demands_scale(const ospfw_demands* dm, double factor,
                                 ospfw_demands** out);
void ospfw_demands_free(ospfw_demands* dm);

/* --- weights: "weight arc_index w" text format -------------------------- */
ospfw_status ospfw_weights_parse(const char* text, const ospfw_topology* topo,
                                 int w_max, ospfw_weights** out);
ospfw_status ospfw_weights_serialize(const ospfw_weights* w, char** out);
ospfw_status ospfw_weights_random(const ospfw_topology* topo, int w_max,
                                  unsigned long long seed, ospfw_weights** out);
/* kind: "UNIT", "INVCAP" or "RANDOM" */
ospfw_status ospfw_weights_baseline(const ospfw_topology* topo,
                                    const char* kind, int w_max,
                                    unsigned long long seed,
                                    ospfw_weights** out);
void ospfw_weights_free(ospfw_weights* w);

/* --- evaluation --------------------------------------------------------- */
typedef struct ospfw_cost_report {
  double total_cost;
  double normalized_cost;
  double max_utilization;
} ospfw_cost_report;

/* step_cost_model != 0 evaluates the literal per-band constants instead of
 * the continuous piecewise-linear cost. */
ospfw_status ospfw_evaluate(const ospfw_topology* topo,
                            const ospfw_demands* dm, const ospfw_weights* w,
                            int step_cost_model, ospfw_cost_report* out);

/* --- single-topology weight search -------------------------------------- */
typedef struct ospfw_tabu_params {
  int max_iterations;
  int stall_limit;
  int tenure; /* 0 = round(sqrt(arc count)) */
  int neighborhood_samples;
  unsigned long long seed;
} ospfw_tabu_params;

ospfw_status ospfw_optimize(const ospfw_topology* topo,
                            const ospfw_demands* dm,
                            const ospfw_tabu_params* params, int w_max,
                            ospfw_weights** best_out, double* best_cost_out,
                            char** trace_csv_out /* nullable */);

/* --- failure scenarios --------------------------------------------------- */
/* added_capacity <= 0 selects the default policy (largest existing). */
ospfw_status ospfw_scenario_build(const ospfw_topology* base,
                                  const ospfw_demands* dm,
                                  double added_capacity,
                                  ospfw_scenario** out);
ospfw_status ospfw_scenario_info(const ospfw_scenario* sc, unsigned* crit_lo,
                                 unsigned* crit_hi, double* added_capacity);
void ospfw_scenario_free(ospfw_scenario* sc);

/* strategy: "OH", "FT", "SS", "UNIT", "INVCAP" or "RANDOM" */
ospfw_status ospfw_scenario_run(const ospfw_scenario* sc, const char* strategy,
                                const ospfw_tabu_params* params, int w_max,
                                ospfw_result** out);
ospfw_status ospfw_result_costs(const ospfw_result* r, double* cost_norm,
                                double* cost_fail, double* objective);
ospfw_status ospfw_result_weights(const ospfw_result* r, ospfw_weights** out);
ospfw_status ospfw_result_trace_csv(const ospfw_result* r, char** out);
void ospfw_result_free(ospfw_result* r);

/* delta_norm/fail/total = OH cost minus challenger cost per state. */
ospfw_status ospfw_delta(const ospfw_result* oh, const ospfw_result* challenger,
                         double* delta_norm, double* delta_fail,
                         double* delta_total);

/* --- instance generation -------------------------------------------------- */
ospfw_status ospfw_gen_topology(const char* genspec_json, ospfw_topology** out);
ospfw_status ospfw_gen_demands(const ospfw_topology* topo,
                               const char* demandspec_json,
                               ospfw_demands** out);
/* name: h50, h100, r50, r100, w50 or w100 */
ospfw_status ospfw_preset_genspec(const char* name, unsigned long long seed,
                                  char** genspec_json_out);

/* --- experiments ----------------------------------------------------------- */
ospfw_status ospfw_experiment_run(const char* config_json,
                                  char** report_json_out);
/* comparison: FT_VS_OH, SS_VS_OH or FT_VS_SS; format: csv or markdown. */
ospfw_status ospfw_report_table(const char* report_json, const char* comparison,
                                const char* format, int sig6, char** out);
ospfw_status ospfw_report_trace(const char* report_json, int scale,
                                const char* strategy, char** out);
ospfw_status ospfw_manifest_from_config(const char* config_json,
                                        char** manifest_out);
ospfw_status ospfw_config_from_manifest(const char* manifest_text,
                                        char** config_json_out);

#ifdef __cplusplus
}
#endif

#endif /* OSPFW_H */
