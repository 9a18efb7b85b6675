// Exercises the shared-library surface exactly as an external consumer
// would: only ospfw/ospfw.h, no core headers.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <string>

#include "json.hpp"
#include "ospfw/ospfw.h"

namespace {

struct Str {
  char* ptr = nullptr;
  ~Str() { ospfw_string_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

constexpr const char* kChainTopo = "nodes 3\narc 0 1 100\narc 1 2 100\n";

}  // namespace

TEST_CASE("version and error strings are always available") {
  CHECK(std::string(ospfw_version()) == "0.1.0");
  CHECK(ospfw_last_error() != nullptr);
}

TEST_CASE("topology parse, inspect, serialize") {
  ospfw_topology* topo = nullptr;
  REQUIRE(ospfw_topology_parse(kChainTopo, &topo) == OSPFW_OK);
  CHECK(ospfw_topology_node_count(topo) == 3);
  CHECK(ospfw_topology_arc_count(topo) == 2);
  Str text;
  REQUIRE(ospfw_topology_serialize(topo, &text.ptr) == OSPFW_OK);
  CHECK(text.str() == kChainTopo);
  ospfw_topology_free(topo);
}

TEST_CASE("parse errors carry status codes and messages") {
  ospfw_topology* topo = nullptr;
  CHECK(ospfw_topology_parse("nodes 3\narc 0 9 5", &topo) ==
        OSPFW_ERR_NODE_OUT_OF_RANGE);
  CHECK(std::strlen(ospfw_last_error()) > 0);
  CHECK(ospfw_topology_parse("bogus", &topo) == OSPFW_ERR_MALFORMED_INPUT);
  CHECK(ospfw_topology_parse(nullptr, &topo) == OSPFW_ERR_BAD_PARAMS);
}

TEST_CASE("evaluate a low-utilization chain to the normalization floor") {
  ospfw_topology* topo = nullptr;
  REQUIRE(ospfw_topology_parse(kChainTopo, &topo) == OSPFW_OK);
  ospfw_demands* dm = nullptr;
  REQUIRE(ospfw_demands_parse("demand 0 2 7\n", topo, &dm) == OSPFW_OK);
  ospfw_weights* w = nullptr;
  REQUIRE(ospfw_weights_parse("weight 0 1\nweight 1 1\n", topo, 20, &w) ==
          OSPFW_OK);

  ospfw_cost_report report;
  REQUIRE(ospfw_evaluate(topo, dm, w, 0, &report) == OSPFW_OK);
  CHECK(report.total_cost == 14.0);
  CHECK(report.normalized_cost == 1.0);
  CHECK(report.max_utilization == doctest::Approx(0.07));

  ospfw_weights_free(w);
  ospfw_demands_free(dm);
  ospfw_topology_free(topo);
}

TEST_CASE("baseline and random weights through the C surface") {
  ospfw_topology* topo = nullptr;
  REQUIRE(ospfw_topology_parse(
              "nodes 3\narc 0 1 100\narc 1 2 50\narc 2 0 25\n", &topo) ==
          OSPFW_OK);
  ospfw_weights* w = nullptr;
  REQUIRE(ospfw_weights_baseline(topo, "INVCAP", 20, 0, &w) == OSPFW_OK);
  Str text;
  REQUIRE(ospfw_weights_serialize(w, &text.ptr) == OSPFW_OK);
  CHECK(text.str() == "weight 0 1\nweight 1 2\nweight 2 4\n");
  ospfw_weights_free(w);

  ospfw_weights* r1 = nullptr;
  ospfw_weights* r2 = nullptr;
  REQUIRE(ospfw_weights_random(topo, 20, 33, &r1) == OSPFW_OK);
  REQUIRE(ospfw_weights_random(topo, 20, 33, &r2) == OSPFW_OK);
  Str t1, t2;
  ospfw_weights_serialize(r1, &t1.ptr);
  ospfw_weights_serialize(r2, &t2.ptr);
  CHECK(t1.str() == t2.str());
  ospfw_weights_free(r1);
  ospfw_weights_free(r2);

  CHECK(ospfw_weights_baseline(topo, "NOPE", 20, 0, &w) == OSPFW_ERR_CONFIG);
  ospfw_topology_free(topo);
}

TEST_CASE("optimize returns weights, cost and a trace") {
  ospfw_topology* topo = nullptr;
  REQUIRE(ospfw_topology_parse(
              "nodes 4\narc 0 1 40\narc 1 0 40\narc 1 2 40\narc 2 1 40\n"
              "arc 2 3 40\narc 3 2 40\narc 3 0 40\narc 0 3 40\n",
              &topo) == OSPFW_OK);
  ospfw_demands* dm = nullptr;
  REQUIRE(ospfw_demands_parse("demand 0 2 30\ndemand 1 3 20\n", topo, &dm) ==
          OSPFW_OK);
  const ospfw_tabu_params params{100, 50, 0, 6, 7};
  ospfw_weights* best = nullptr;
  double best_cost = 0.0;
  Str trace;
  REQUIRE(ospfw_optimize(topo, dm, &params, 20, &best, &best_cost,
                         &trace.ptr) == OSPFW_OK);
  CHECK(best_cost >= 1.0);
  CHECK(trace.str().rfind("iteration,best_cost\n0,", 0) == 0);
  ospfw_weights_free(best);
  ospfw_demands_free(dm);
  ospfw_topology_free(topo);
}

TEST_CASE("scenario lifecycle and strategy runs") {
  ospfw_topology* base = nullptr;
  REQUIRE(ospfw_topology_parse(
              "nodes 4\narc 0 1 100\narc 1 0 100\narc 1 2 100\narc 2 1 100\n"
              "arc 2 3 100\narc 3 2 100\narc 3 0 100\narc 0 3 100\n",
              &base) == OSPFW_OK);
  ospfw_demands* dm = nullptr;
  REQUIRE(ospfw_demands_parse("demand 0 2 60\ndemand 1 3 25\n", base, &dm) ==
          OSPFW_OK);

  ospfw_scenario* sc = nullptr;
  REQUIRE(ospfw_scenario_build(base, dm, 0.0, &sc) == OSPFW_OK);
  unsigned lo = 9, hi = 9;
  double cap = 0.0;
  REQUIRE(ospfw_scenario_info(sc, &lo, &hi, &cap) == OSPFW_OK);
  CHECK(lo == 0);
  CHECK(hi == 2);
  CHECK(cap == 100.0);

  const ospfw_tabu_params params{150, 80, 0, 6, 3};
  ospfw_result* oh = nullptr;
  ospfw_result* ft = nullptr;
  ospfw_result* ss = nullptr;
  REQUIRE(ospfw_scenario_run(sc, "OH", &params, 20, &oh) == OSPFW_OK);
  REQUIRE(ospfw_scenario_run(sc, "FT", &params, 20, &ft) == OSPFW_OK);
  REQUIRE(ospfw_scenario_run(sc, "SS", &params, 20, &ss) == OSPFW_OK);

  double oh_n = 0, oh_f = 0, ft_n = 0, ft_f = 0, obj = 0;
  REQUIRE(ospfw_result_costs(oh, &oh_n, &oh_f, &obj) == OSPFW_OK);
  CHECK(obj == oh_n);
  REQUIRE(ospfw_result_costs(ft, &ft_n, &ft_f, &obj) == OSPFW_OK);
  CHECK(obj == doctest::Approx((ft_n + ft_f) / 2.0).epsilon(1e-15));

  double dn = 0, df = 0, dt = 0;
  REQUIRE(ospfw_delta(oh, ft, &dn, &df, &dt) == OSPFW_OK);
  CHECK(dt == dn + df);
  CHECK(dn == oh_n - ft_n);

  ospfw_weights* w = nullptr;
  REQUIRE(ospfw_result_weights(ss, &w) == OSPFW_OK);
  Str wtext;
  REQUIRE(ospfw_weights_serialize(w, &wtext.ptr) == OSPFW_OK);
  CHECK(!wtext.str().empty());
  Str trace;
  REQUIRE(ospfw_result_trace_csv(ss, &trace.ptr) == OSPFW_OK);
  CHECK(trace.str().rfind("iteration,best_cost", 0) == 0);

  ospfw_weights_free(w);
  ospfw_result_free(oh);
  ospfw_result_free(ft);
  ospfw_result_free(ss);
  ospfw_scenario_free(sc);
  ospfw_demands_free(dm);
  ospfw_topology_free(base);
}

TEST_CASE("generation through JSON specs") {
  Str preset;
  REQUIRE(ospfw_preset_genspec("r50", 77, &preset.ptr) == OSPFW_OK);
  ospfw_topology* topo = nullptr;
  REQUIRE(ospfw_gen_topology(preset.str().c_str(), &topo) == OSPFW_OK);
  CHECK(ospfw_topology_node_count(topo) == 50);
  CHECK(ospfw_topology_arc_count(topo) >= 228);

  ospfw_demands* dm = nullptr;
  REQUIRE(ospfw_gen_demands(
              topo, R"({"base_seed": 5, "density": 0.2})", &dm) == OSPFW_OK);
  Str text;
  REQUIRE(ospfw_demands_serialize(dm, &text.ptr) == OSPFW_OK);
  CHECK(text.str().rfind("demand ", 0) == 0);

  CHECK(ospfw_preset_genspec("zz9", 1, &preset.ptr) == OSPFW_ERR_CONFIG);
  ospfw_demands_free(dm);
  ospfw_topology_free(topo);
}

TEST_CASE("experiments, tables, traces and manifests through the C API") {
  const nlohmann::json cfg{
      {"gen",
       {{"family", "RANDOM"},
        {"node_count", 12},
        {"target_arc_count", 40},
        {"seed", 7}}},
      {"demand_spec", {{"base_seed", 5}, {"density", 0.3}, {"magnitude", 8.0}}},
      {"scales", {1, 2}},
      {"strategies", {"OH", "FT", "SS"}},
      {"seed", 42},
      {"tabu",
       {{"max_iterations", 40}, {"stall_limit", 20},
        {"neighborhood_samples", 4}}}};

  Str report;
  REQUIRE(ospfw_experiment_run(cfg.dump().c_str(), &report.ptr) == OSPFW_OK);
  const nlohmann::json parsed = nlohmann::json::parse(report.str());
  CHECK(parsed.at("runs").size() == 6);

  Str table;
  REQUIRE(ospfw_report_table(report.str().c_str(), "FT_VS_OH", "csv", 0,
                             &table.ptr) == OSPFW_OK);
  CHECK(table.str().rfind("D,FT_N,OH_N,delta_N,FT_F,OH_F,delta_F,delta\n", 0) ==
        0);

  Str trace;
  REQUIRE(ospfw_report_trace(report.str().c_str(), 1, "SS", &trace.ptr) ==
          OSPFW_OK);
  CHECK(trace.str().rfind("iteration,best_cost", 0) == 0);

  Str manifest;
  REQUIRE(ospfw_manifest_from_config(cfg.dump().c_str(), &manifest.ptr) ==
          OSPFW_OK);
  Str cfg_back;
  REQUIRE(ospfw_config_from_manifest(manifest.str().c_str(), &cfg_back.ptr) ==
          OSPFW_OK);

  // Re-running from the round-tripped config reproduces the table bytes.
  Str report2;
  REQUIRE(ospfw_experiment_run(cfg_back.str().c_str(), &report2.ptr) ==
          OSPFW_OK);
  Str table2;
  REQUIRE(ospfw_report_table(report2.str().c_str(), "FT_VS_OH", "csv", 0,
                             &table2.ptr) == OSPFW_OK);
  CHECK(table.str() == table2.str());
}
