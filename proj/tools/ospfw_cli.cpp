// Command-line front end. Talks to the engine exclusively through the C
// API in ospfw/ospfw.h, the same surface other language bindings get.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ospfw/ospfw.h"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

[[noreturn]] void die(ospfw_status st, const std::string& context) {
  std::cerr << "error: " << context << ": " << ospfw_last_error()
            << " (status " << static_cast<int>(st) << ")\n";
  std::exit(1);
}

void check(ospfw_status st, const std::string& context) {
  if (st != OSPFW_OK) die(st, context);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open '" << path << "'\n";
    std::exit(1);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write '" << path << "'\n";
    std::exit(1);
  }
  out << content;
}

struct StringGuard {
  char* ptr = nullptr;
  ~StringGuard() { ospfw_string_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

struct TopoGuard {
  ospfw_topology* ptr = nullptr;
  ~TopoGuard() { ospfw_topology_free(ptr); }
};
struct DemGuard {
  ospfw_demands* ptr = nullptr;
  ~DemGuard() { ospfw_demands_free(ptr); }
};
struct WeightsGuard {
  ospfw_weights* ptr = nullptr;
  ~WeightsGuard() { ospfw_weights_free(ptr); }
};

struct CommonSearchOpts {
  int iterations = 1000;
  int stall = 300;
  int tenure = 0;
  int samples = 10;
  int wmax = 20;
  uint64_t seed = 1;
};

void add_search_flags(CLI::App* cmd, CommonSearchOpts& o) {
  cmd->add_option("--iterations", o.iterations, "Tabu iteration budget");
  cmd->add_option("--stall", o.stall, "Stop after this many non-improving iterations");
  cmd->add_option("--tenure", o.tenure, "Tabu tenure (0 = sqrt of arc count)");
  cmd->add_option("--samples", o.samples, "Candidate moves per iteration");
  cmd->add_option("--wmax", o.wmax, "Largest legal weight");
  cmd->add_option("--seed", o.seed, "Random seed");
}

ospfw_tabu_params to_params(const CommonSearchOpts& o) {
  return ospfw_tabu_params{o.iterations, o.stall, o.tenure, o.samples, o.seed};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Failure-aware OSPF weight setting toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ospfw_version()));

  // --- gen -------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "Generate a topology and demand files");
  std::string gen_preset, gen_family = "RANDOM", gen_out = "instance";
  unsigned gen_nodes = 50;
  unsigned gen_arcs = 0;
  double gen_prob = 0.0, gen_alpha = 0.0, gen_beta = 0.6;
  std::vector<double> gen_caps;
  uint64_t gen_seed = 1, dem_seed = 1;
  double dem_density = 0.3, dem_magnitude = 1.0, dem_scale_base = 1.4142135623730951;
  int dem_scale = 0;
  gen->add_option("--preset", gen_preset,
                  "Named shape: h50, h100, r50, r100, w50, w100");
  gen->add_option("--family", gen_family, "RANDOM, WAXMAN or HIER2");
  gen->add_option("--nodes", gen_nodes, "Node count");
  gen->add_option("--arcs", gen_arcs, "Target arc count");
  gen->add_option("--prob", gen_prob, "Edge probability (RANDOM)");
  gen->add_option("--alpha", gen_alpha, "Waxman alpha");
  gen->add_option("--beta", gen_beta, "Waxman beta");
  gen->add_option("--capacities", gen_caps, "Capacity levels");
  gen->add_option("--seed", gen_seed, "Topology seed");
  gen->add_option("--demand-seed", dem_seed, "Demand seed");
  gen->add_option("--density", dem_density, "Fraction of pairs with demand");
  gen->add_option("--magnitude", dem_magnitude, "Mean base demand");
  gen->add_option("--scale", dem_scale, "Demand scale index");
  gen->add_option("--scale-base", dem_scale_base, "Demand ladder base");
  gen->add_option("--out", gen_out, "Output prefix (<out>.topo, <out>.dem)");

  // --- evaluate ----------------------------------------------------------
  auto* evaluate = app.add_subcommand("evaluate", "Cost of a weight setting");
  std::string eval_topo, eval_dem, eval_weights, eval_cost_model = "linear";
  int eval_wmax = 20;
  evaluate->add_option("--topo", eval_topo, "Topology file")->required();
  evaluate->add_option("--demands", eval_dem, "Demand file")->required();
  evaluate->add_option("--weights", eval_weights, "Weight file")->required();
  evaluate->add_option("--wmax", eval_wmax, "Largest legal weight");
  evaluate->add_option("--cost", eval_cost_model, "linear or step");

  // --- optimize ------------------------------------------------------------
  auto* optimize = app.add_subcommand("optimize", "Search weights for one topology");
  std::string opt_topo, opt_dem, opt_out = "weights.txt", opt_trace;
  CommonSearchOpts opt_search;
  optimize->add_option("--topo", opt_topo, "Topology file")->required();
  optimize->add_option("--demands", opt_dem, "Demand file")->required();
  optimize->add_option("--out", opt_out, "Weight file to write");
  optimize->add_option("--trace", opt_trace, "Write search trace CSV here");
  add_search_flags(optimize, opt_search);

  // --- compare -----------------------------------------------------------
  auto* compare = app.add_subcommand(
      "compare", "Run strategies across demand scales and emit tables");
  std::string cmp_topo, cmp_dem, cmp_preset, cmp_manifest, cmp_out = "runs";
  std::string cmp_format = "csv";
  std::vector<int> cmp_scales;
  std::vector<std::string> cmp_strategies;
  CommonSearchOpts cmp_search;
  double cmp_multiplier = 1.0, cmp_added_capacity = 0.0;
  double cmp_density = 0.3, cmp_magnitude = 1.0;
  uint64_t cmp_demand_seed = 1;
  int cmp_parallel = 1;
  bool cmp_sig6 = false, cmp_no_deltas = false;
  compare->add_option("--topo", cmp_topo, "Topology file");
  compare->add_option("--demands", cmp_dem, "Demand file (base matrix)");
  compare->add_option("--preset", cmp_preset, "Generate instance from preset");
  compare->add_option("--manifest", cmp_manifest, "Re-run a saved manifest");
  compare->add_option("--scales", cmp_scales, "Demand scale indices");
  compare->add_option("--strategy", cmp_strategies,
                      "Strategies: OH FT SS UNIT INVCAP RANDOM");
  compare->add_option("--multiplier", cmp_multiplier, "Base demand multiplier");
  compare->add_option("--added-capacity", cmp_added_capacity,
                      "Capacity of the added link (0 = largest existing)");
  compare->add_option("--density", cmp_density, "Generated demand density");
  compare->add_option("--magnitude", cmp_magnitude, "Generated demand size");
  compare->add_option("--demand-seed", cmp_demand_seed, "Generated demand seed");
  compare->add_option("--parallel", cmp_parallel, "Concurrent runs");
  compare->add_option("--format", cmp_format, "csv or markdown");
  compare->add_flag("--sig6", cmp_sig6, "6 significant digits in tables");
  compare->add_flag("--no-deltas", cmp_no_deltas, "Skip delta columns");
  compare->add_option("--out", cmp_out, "Output directory");
  add_search_flags(compare, cmp_search);

  // --- table / trace -------------------------------------------------------
  auto* table = app.add_subcommand("table", "Re-emit a comparison table");
  std::string tbl_report, tbl_comparison = "FT_VS_OH", tbl_format = "csv",
              tbl_out;
  bool tbl_sig6 = false;
  table->add_option("--report", tbl_report, "report.json path")->required();
  table->add_option("--comparison", tbl_comparison,
                    "FT_VS_OH, SS_VS_OH or FT_VS_SS");
  table->add_option("--format", tbl_format, "csv or markdown");
  table->add_flag("--sig6", tbl_sig6, "6 significant digits");
  table->add_option("--out", tbl_out, "Write here instead of stdout");

  auto* trace = app.add_subcommand("trace", "Emit a search trace");
  std::string trc_report, trc_strategy = "OH", trc_out;
  int trc_scale = 0;
  trace->add_option("--report", trc_report, "report.json path")->required();
  trace->add_option("--scale", trc_scale, "Demand scale index")->required();
  trace->add_option("--strategy", trc_strategy, "Strategy name");
  trace->add_option("--out", trc_out, "Write here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    json spec;
    if (!gen_preset.empty()) {
      StringGuard preset_json;
      check(ospfw_preset_genspec(gen_preset.c_str(), gen_seed, &preset_json.ptr),
            "preset");
      spec = json::parse(preset_json.str());
    } else {
      spec = {{"family", gen_family},
              {"node_count", gen_nodes},
              {"target_arc_count", gen_arcs},
              {"edge_probability", gen_prob},
              {"waxman_alpha", gen_alpha},
              {"waxman_beta", gen_beta},
              {"seed", gen_seed}};
      if (!gen_caps.empty()) spec["capacity_levels"] = gen_caps;
    }
    TopoGuard topo;
    check(ospfw_gen_topology(spec.dump().c_str(), &topo.ptr), "gen topology");
    const json dspec{{"base_seed", dem_seed},
                     {"scale_index", dem_scale},
                     {"scale_base", dem_scale_base},
                     {"density", dem_density},
                     {"magnitude", dem_magnitude}};
    DemGuard demands;
    check(ospfw_gen_demands(topo.ptr, dspec.dump().c_str(), &demands.ptr),
          "gen demands");
    StringGuard topo_text, dem_text;
    check(ospfw_topology_serialize(topo.ptr, &topo_text.ptr), "serialize");
    check(ospfw_demands_serialize(demands.ptr, &dem_text.ptr), "serialize");
    write_file(gen_out + ".topo", topo_text.str());
    write_file(gen_out + ".dem", dem_text.str());
    std::cout << "wrote " << gen_out << ".topo ("
              << ospfw_topology_node_count(topo.ptr) << " nodes, "
              << ospfw_topology_arc_count(topo.ptr) << " arcs) and "
              << gen_out << ".dem\n";
    return 0;
  }

  if (evaluate->parsed()) {
    TopoGuard topo;
    check(ospfw_topology_parse(read_file(eval_topo).c_str(), &topo.ptr),
          "parse topology");
    DemGuard demands;
    check(ospfw_demands_parse(read_file(eval_dem).c_str(), topo.ptr,
                              &demands.ptr),
          "parse demands");
    WeightsGuard weights;
    check(ospfw_weights_parse(read_file(eval_weights).c_str(), topo.ptr,
                              eval_wmax, &weights.ptr),
          "parse weights");
    ospfw_cost_report report;
    check(ospfw_evaluate(topo.ptr, demands.ptr, weights.ptr,
                         eval_cost_model == "step" ? 1 : 0, &report),
          "evaluate");
    std::printf("total_cost=%.9g\n", report.total_cost);
    std::printf("normalized_cost=%.9g\n", report.normalized_cost);
    std::printf("max_utilization=%.9g\n", report.max_utilization);
    return 0;
  }

  if (optimize->parsed()) {
    TopoGuard topo;
    check(ospfw_topology_parse(read_file(opt_topo).c_str(), &topo.ptr),
          "parse topology");
    DemGuard demands;
    check(ospfw_demands_parse(read_file(opt_dem).c_str(), topo.ptr,
                              &demands.ptr),
          "parse demands");
    const ospfw_tabu_params params = to_params(opt_search);
    WeightsGuard best;
    double best_cost = 0.0;
    StringGuard trace_text;
    check(ospfw_optimize(topo.ptr, demands.ptr, &params, opt_search.wmax,
                         &best.ptr, &best_cost,
                         opt_trace.empty() ? nullptr : &trace_text.ptr),
          "optimize");
    StringGuard weights_text;
    check(ospfw_weights_serialize(best.ptr, &weights_text.ptr), "serialize");
    write_file(opt_out, weights_text.str());
    if (!opt_trace.empty()) write_file(opt_trace, trace_text.str());
    std::printf("best_cost=%.9g\n", best_cost);
    std::cout << "wrote " << opt_out << "\n";
    return 0;
  }

  if (compare->parsed()) {
    json cfg;
    if (!cmp_manifest.empty()) {
      StringGuard cfg_json;
      check(ospfw_config_from_manifest(read_file(cmp_manifest).c_str(),
                                       &cfg_json.ptr),
            "parse manifest");
      cfg = json::parse(cfg_json.str());
    } else {
      cfg = json::object();
      if (!cmp_preset.empty()) {
        StringGuard preset_json;
        check(ospfw_preset_genspec(cmp_preset.c_str(), cmp_search.seed,
                                   &preset_json.ptr),
              "preset");
        cfg["gen"] = json::parse(preset_json.str());
        cfg["demand_spec"] = {{"base_seed", cmp_demand_seed},
                              {"density", cmp_density},
                              {"magnitude", cmp_magnitude}};
      } else if (!cmp_topo.empty()) {
        cfg["topology_file"] = cmp_topo;
        cfg["demands_file"] = cmp_dem;
      } else {
        std::cerr << "error: compare needs --topo/--demands, --preset or "
                     "--manifest\n";
        return 1;
      }
      if (!cmp_scales.empty()) cfg["scales"] = cmp_scales;
      if (!cmp_strategies.empty()) cfg["strategies"] = cmp_strategies;
      cfg["demand_multiplier"] = cmp_multiplier;
      cfg["added_link_capacity"] = cmp_added_capacity;
      cfg["seed"] = cmp_search.seed;
      cfg["w_max"] = cmp_search.wmax;
      cfg["parallelism"] = cmp_parallel;
      cfg["deltas"] = !cmp_no_deltas;
      cfg["table_format"] = cmp_format;
      cfg["table_precision"] = cmp_sig6 ? "sig6" : "3dp";
      cfg["tabu"] = {{"max_iterations", cmp_search.iterations},
                     {"stall_limit", cmp_search.stall},
                     {"tenure", cmp_search.tenure},
                     {"neighborhood_samples", cmp_search.samples}};
    }

    StringGuard report_json;
    check(ospfw_experiment_run(cfg.dump().c_str(), &report_json.ptr),
          "run experiment");

    fs::create_directories(cmp_out);
    write_file(cmp_out + "/report.json", report_json.str());
    StringGuard manifest;
    check(ospfw_manifest_from_config(cfg.dump().c_str(), &manifest.ptr),
          "manifest");
    write_file(cmp_out + "/manifest.txt", manifest.str());

    const json report = json::parse(report_json.str());
    const auto strategies =
        report.at("config").at("strategies").get<std::vector<std::string>>();
    auto has = [&](const char* s) {
      return std::find(strategies.begin(), strategies.end(), s) !=
             strategies.end();
    };
    const std::string fmt =
        report.at("config").value("table_format", "csv");
    const int sig6 =
        report.at("config").value("table_precision", "3dp") == "sig6" ? 1 : 0;
    const std::string ext = fmt == "markdown" ? ".md" : ".csv";
    struct Cmp {
      const char* name;
      const char* a;
      const char* b;
      const char* file;
    };
    for (const Cmp& c : {Cmp{"FT_VS_OH", "FT", "OH", "ft_vs_oh"},
                         Cmp{"SS_VS_OH", "SS", "OH", "ss_vs_oh"},
                         Cmp{"FT_VS_SS", "FT", "SS", "ft_vs_ss"}}) {
      if (!has(c.a) || !has(c.b)) continue;
      StringGuard text;
      check(ospfw_report_table(report_json.str().c_str(), c.name, fmt.c_str(),
                               sig6, &text.ptr),
            c.name);
      write_file(cmp_out + "/" + c.file + ext, text.str());
    }
    for (const json& run : report.at("runs")) {
      if (!run.at("ok").get<bool>()) continue;
      const std::string strat = run.at("strategy").get<std::string>();
      if (strat != "OH" && strat != "FT" && strat != "SS") continue;
      const int scale = run.at("scale").get<int>();
      StringGuard text;
      check(ospfw_report_trace(report_json.str().c_str(), scale,
                               strat.c_str(), &text.ptr),
            "trace");
      write_file(cmp_out + "/trace_D" + std::to_string(scale) + "_" + strat +
                     ".csv",
                 text.str());
    }
    int failures = 0;
    for (const json& run : report.at("runs"))
      if (!run.at("ok").get<bool>()) {
        ++failures;
        std::cerr << "run D" << run.at("scale").get<int>() << "/"
                  << run.at("strategy").get<std::string>() << " failed: "
                  << run.value("error", std::string{}) << "\n";
      }
    std::cout << "wrote " << cmp_out << "/report.json";
    if (failures) std::cout << " (" << failures << " failed runs)";
    std::cout << "\n";
    return 0;
  }

  if (table->parsed()) {
    StringGuard text;
    check(ospfw_report_table(read_file(tbl_report).c_str(),
                             tbl_comparison.c_str(), tbl_format.c_str(),
                             tbl_sig6 ? 1 : 0, &text.ptr),
          "table");
    if (tbl_out.empty())
      std::cout << text.str();
    else
      write_file(tbl_out, text.str());
    return 0;
  }

  if (trace->parsed()) {
    StringGuard text;
    check(ospfw_report_trace(read_file(trc_report).c_str(), trc_scale,
                             trc_strategy.c_str(), &text.ptr),
          "trace");
    if (trc_out.empty())
      std::cout << text.str();
    else
      write_file(trc_out, text.str());
    return 0;
  }

  return 0;
}
