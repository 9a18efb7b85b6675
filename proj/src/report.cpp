#include "ospfw/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "ospfw/format.hpp"

namespace ospfw {

using json = nlohmann::json;

const char* comparison_name(Comparison c) {
  switch (c) {
    case Comparison::kFtVsOh: return "FT_VS_OH";
    case Comparison::kSsVsOh: return "SS_VS_OH";
    case Comparison::kFtVsSs: return "FT_VS_SS";
  }
  return "?";
}

Comparison comparison_from_name(std::string_view name) {
  if (name == "FT_VS_OH") return Comparison::kFtVsOh;
  if (name == "SS_VS_OH") return Comparison::kSsVsOh;
  if (name == "FT_VS_SS") return Comparison::kFtVsSs;
  fail(ErrorCode::kConfigError,
       "unknown comparison '" + std::string(name) + "'");
}

uint64_t run_seed(uint64_t master_seed, int scale, Strategy strategy) {
  return mix_seed(master_seed, static_cast<uint64_t>(scale) + 1,
                  static_cast<uint64_t>(strategy) + 1);
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIoError, "cannot open '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

bool has_strategy(const ExperimentConfig& cfg, Strategy s) {
  return std::find(cfg.strategies.begin(), cfg.strategies.end(), s) !=
         cfg.strategies.end();
}

void validate_config(const ExperimentConfig& cfg) {
  const bool from_files = !cfg.topology_file.empty();
  if (from_files && cfg.demands_file.empty())
    fail(ErrorCode::kConfigError, "topology_file given without demands_file");
  if (!from_files && !cfg.gen.has_value())
    fail(ErrorCode::kConfigError, "need either instance files or a gen spec");
  if (!from_files && !cfg.demand_spec.has_value())
    fail(ErrorCode::kConfigError, "generated instances need a demand spec");
  if (cfg.scales.empty()) fail(ErrorCode::kConfigError, "no scales requested");
  if (cfg.strategies.empty())
    fail(ErrorCode::kConfigError, "no strategies requested");
  if (cfg.deltas && !has_strategy(cfg, Strategy::kOh))
    fail(ErrorCode::kConfigError,
         "delta columns require the OH strategy to be present");
  if (cfg.w_max < 1) fail(ErrorCode::kConfigError, "w_max must be >= 1");
  if (!(cfg.demand_multiplier > 0.0))
    fail(ErrorCode::kConfigError, "demand_multiplier must be positive");
  for (int k : cfg.scales)
    if (k < 0) fail(ErrorCode::kConfigError, "scales must be >= 0");
}

StrategyResult dispatch(const FailureScenario& sc, Strategy s,
                        TabuParams params, int w_max) {
  switch (s) {
    case Strategy::kOh: return run_oh(sc, params, w_max);
    case Strategy::kFt: return run_ft(sc, params, w_max);
    case Strategy::kSs: return run_ss(sc, params, w_max);
    default: return run_baseline(sc, s, w_max, params.seed);
  }
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  validate_config(cfg);

  Topology base = [&] {
    if (!cfg.topology_file.empty())
      return parse_topology(read_file(cfg.topology_file));
    return gen_topology(*cfg.gen);
  }();
  DemandMatrix base_demands = [&] {
    if (!cfg.demands_file.empty())
      return parse_demands(read_file(cfg.demands_file), base);
    DemandSpec ds = *cfg.demand_spec;
    ds.scale_index = 0;  // the ladder is applied per requested scale below
    return gen_demands(base, ds);
  }();
  if (cfg.demand_multiplier != 1.0)
    base_demands = base_demands.scaled(cfg.demand_multiplier);

  ExperimentReport report;
  report.config = cfg;

  // One scenario per scale; same critical pair throughout since scaling
  // every entry by a common factor cannot change the argmax.
  std::vector<int> scales = cfg.scales;
  std::sort(scales.begin(), scales.end());
  scales.erase(std::unique(scales.begin(), scales.end()), scales.end());

  std::vector<FailureScenario> scenarios;
  scenarios.reserve(scales.size());
  for (int k : scales) {
    DemandMatrix dm = base_demands;
    for (int i = 0; i < k; ++i) dm = dm.scaled(cfg.scale_base);
    scenarios.push_back(build_scenario(base, dm, cfg.added_link_capacity));
  }

  report.nodes = base.node_count();
  report.arcs_normal = scenarios.front().t_norm.arc_count();
  report.critical_lo = scenarios.front().failed_link.lo;
  report.critical_hi = scenarios.front().failed_link.hi;
  report.added_capacity =
      scenarios.front().t_norm.arc(scenarios.front().added_arcs[0]).capacity;

  report.runs.resize(scales.size() * cfg.strategies.size());
  auto run_cell = [&](size_t cell) {
    const size_t si = cell / cfg.strategies.size();
    const Strategy strat = cfg.strategies[cell % cfg.strategies.size()];
    RunRecord& rec = report.runs[cell];
    rec.scale = scales[si];
    rec.strategy = strat;
    TabuParams params = cfg.tabu;
    params.seed = run_seed(cfg.seed, rec.scale, strat);
    const auto start = std::chrono::steady_clock::now();
    try {
      rec.result = dispatch(scenarios[si], strat, params, cfg.w_max);
      rec.ok = true;
    } catch (const Error& e) {
      rec.ok = false;
      rec.error = std::string(error_code_name(e.code())) + ": " + e.what();
    }
    rec.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  };

  const size_t cells = report.runs.size();
  const int workers = std::max(1, cfg.parallelism);
  if (workers == 1 || cells <= 1) {
    for (size_t c = 0; c < cells; ++c) run_cell(c);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    const int spawn = std::min<size_t>(workers, cells);
    for (int t = 0; t < spawn; ++t)
      pool.emplace_back([&] {
        for (size_t c = next.fetch_add(1); c < cells; c = next.fetch_add(1))
          run_cell(c);
      });
    for (auto& th : pool) th.join();
  }

  if (cfg.deltas && has_strategy(cfg, Strategy::kOh)) {
    for (size_t si = 0; si < scales.size(); ++si) {
      const RunRecord* oh = nullptr;
      for (const RunRecord& r : report.runs)
        if (r.scale == scales[si] && r.strategy == Strategy::kOh && r.ok)
          oh = &r;
      if (!oh) continue;
      for (const RunRecord& r : report.runs) {
        if (r.scale != scales[si] || r.strategy == Strategy::kOh || !r.ok)
          continue;
        report.deltas.push_back(
            {r.scale, r.strategy, delta_report(oh->result, r.result)});
      }
    }
  }
  return report;
}

// --- tables -----------------------------------------------------------------

namespace {

struct CellCosts {
  bool present = false;
  double norm = 0.0;
  double fail = 0.0;
};

CellCosts find_costs(const ExperimentReport& report, int scale, Strategy s) {
  for (const RunRecord& r : report.runs)
    if (r.scale == scale && r.strategy == s && r.ok)
      return {true, r.result.cost_norm, r.result.cost_fail};
  return {};
}

std::string fmt_cost(double v, TablePrecision precision) {
  return precision == TablePrecision::kSig6 ? fmt_sig6(v) : fmt_fixed(v, 3);
}

std::string render_rows(const std::vector<std::vector<std::string>>& rows,
                        TableFormat format) {
  std::string out;
  if (format == TableFormat::kCsv) {
    for (const auto& row : rows) {
      for (size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += row[i];
      }
      out += '\n';
    }
    return out;
  }
  // Markdown: header, separator, body.
  for (size_t r = 0; r < rows.size(); ++r) {
    out += '|';
    for (const auto& cell : rows[r]) out += ' ' + cell + " |";
    out += '\n';
    if (r == 0) {
      out += '|';
      for (size_t i = 0; i < rows[0].size(); ++i) out += " --- |";
      out += '\n';
    }
  }
  return out;
}

void require_strategy(const ExperimentReport& report, Strategy s) {
  if (std::find(report.config.strategies.begin(),
                report.config.strategies.end(),
                s) == report.config.strategies.end())
    fail(ErrorCode::kMissingStrategy,
         std::string("report does not include strategy ") + strategy_name(s));
}

}  // namespace

std::string emit_table(const ExperimentReport& report, TableFormat format,
                       Comparison comparison, TablePrecision precision) {
  const Strategy challenger =
      comparison == Comparison::kSsVsOh ? Strategy::kSs : Strategy::kFt;
  const Strategy reference =
      comparison == Comparison::kFtVsSs ? Strategy::kSs : Strategy::kOh;
  require_strategy(report, challenger);
  require_strategy(report, reference);

  std::vector<std::vector<std::string>> rows;
  const std::string x = strategy_name(challenger);
  if (comparison == Comparison::kFtVsSs) {
    rows.push_back({"D", "FT_N", "SS_N", "FT_F", "SS_F"});
  } else {
    rows.push_back({"D", x + "_N", "OH_N", "delta_N", x + "_F", "OH_F",
                    "delta_F", "delta"});
  }

  std::vector<int> scales;
  for (const RunRecord& r : report.runs)
    if (std::find(scales.begin(), scales.end(), r.scale) == scales.end())
      scales.push_back(r.scale);
  std::sort(scales.begin(), scales.end());

  for (int scale : scales) {
    const CellCosts a = find_costs(report, scale, challenger);
    const CellCosts b = find_costs(report, scale, reference);
    if (!a.present || !b.present) continue;
    const std::string label = "D" + std::to_string(scale);
    if (comparison == Comparison::kFtVsSs) {
      rows.push_back({label, fmt_cost(a.norm, precision),
                      fmt_cost(b.norm, precision), fmt_cost(a.fail, precision),
                      fmt_cost(b.fail, precision)});
    } else {
      // Deltas at full precision, rounded only for display.
      const double dn = b.norm - a.norm;
      const double df = b.fail - a.fail;
      rows.push_back({label, fmt_cost(a.norm, precision),
                      fmt_cost(b.norm, precision), fmt_cost(dn, precision),
                      fmt_cost(a.fail, precision), fmt_cost(b.fail, precision),
                      fmt_cost(df, precision), fmt_cost(dn + df, precision)});
    }
  }
  return render_rows(rows, format);
}

std::string emit_trace(const ExperimentReport& report, int scale,
                       Strategy strategy) {
  for (const RunRecord& r : report.runs) {
    if (r.scale != scale || r.strategy != strategy) continue;
    if (!r.ok)
      fail(ErrorCode::kMissingTrace,
           "run failed, no trace: " + r.error);
    std::string out = "iteration,best_cost\n";
    out += "0," + fmt_shortest(r.result.trace.initial_cost) + "\n";
    for (const TraceEntry& e : r.result.trace.entries)
      out += std::to_string(e.iteration) + "," + fmt_shortest(e.best_cost) +
             "\n";
    return out;
  }
  fail(ErrorCode::kMissingTrace,
       "no run for scale " + std::to_string(scale) + " strategy " +
           strategy_name(strategy));
}

// --- config/manifest/report serialization -----------------------------------

namespace {

json gen_to_json(const GenSpec& g) {
  return json{{"family", family_name(g.family)},
              {"node_count", g.node_count},
              {"target_arc_count", g.target_arc_count},
              {"edge_probability", g.edge_probability},
              {"waxman_alpha", g.waxman_alpha},
              {"waxman_beta", g.waxman_beta},
              {"capacity_levels", g.capacity_levels},
              {"seed", g.seed}};
}

GenSpec gen_from_json(const json& j) {
  GenSpec g;
  g.family = family_from_name(j.at("family").get<std::string>());
  g.node_count = j.at("node_count").get<uint32_t>();
  g.target_arc_count = j.value("target_arc_count", 0u);
  g.edge_probability = j.value("edge_probability", 0.0);
  g.waxman_alpha = j.value("waxman_alpha", 0.0);
  g.waxman_beta = j.value("waxman_beta", 0.6);
  if (j.contains("capacity_levels"))
    g.capacity_levels = j.at("capacity_levels").get<std::vector<double>>();
  g.seed = j.value("seed", 1ull);
  return g;
}

json demand_to_json(const DemandSpec& d) {
  return json{{"base_seed", d.base_seed},
              {"scale_index", d.scale_index},
              {"scale_base", d.scale_base},
              {"density", d.density},
              {"magnitude", d.magnitude}};
}

DemandSpec demand_from_json(const json& j) {
  DemandSpec d;
  d.base_seed = j.value("base_seed", 1ull);
  d.scale_index = j.value("scale_index", 0);
  d.scale_base = j.value("scale_base", 1.4142135623730951);
  d.density = j.value("density", 0.3);
  d.magnitude = j.value("magnitude", 1.0);
  return d;
}

std::vector<std::string> strategy_names(const std::vector<Strategy>& ss) {
  std::vector<std::string> out;
  for (Strategy s : ss) out.emplace_back(strategy_name(s));
  return out;
}

json config_to_json_obj(const ExperimentConfig& cfg) {
  json j{{"topology_file", cfg.topology_file},
         {"demands_file", cfg.demands_file},
         {"demand_multiplier", cfg.demand_multiplier},
         {"scale_base", cfg.scale_base},
         {"scales", cfg.scales},
         {"strategies", strategy_names(cfg.strategies)},
         {"deltas", cfg.deltas},
         {"seed", cfg.seed},
         {"w_max", cfg.w_max},
         {"added_link_capacity", cfg.added_link_capacity},
         {"parallelism", cfg.parallelism},
         {"table_format",
          cfg.table_format == TableFormat::kCsv ? "csv" : "markdown"},
         {"table_precision",
          cfg.table_precision == TablePrecision::k3dp ? "3dp" : "sig6"},
         {"tabu",
          {{"max_iterations", cfg.tabu.max_iterations},
           {"stall_limit", cfg.tabu.stall_limit},
           {"tenure", cfg.tabu.tenure},
           {"neighborhood_samples", cfg.tabu.neighborhood_samples}}}};
  if (cfg.gen) j["gen"] = gen_to_json(*cfg.gen);
  if (cfg.demand_spec) j["demand_spec"] = demand_to_json(*cfg.demand_spec);
  return j;
}

ExperimentConfig config_from_json_obj(const json& j) {
  ExperimentConfig cfg;
  cfg.topology_file = j.value("topology_file", std::string{});
  cfg.demands_file = j.value("demands_file", std::string{});
  if (j.contains("gen") && !j.at("gen").is_null())
    cfg.gen = gen_from_json(j.at("gen"));
  if (j.contains("demand_spec") && !j.at("demand_spec").is_null())
    cfg.demand_spec = demand_from_json(j.at("demand_spec"));
  cfg.demand_multiplier = j.value("demand_multiplier", 1.0);
  cfg.scale_base = j.value("scale_base", 1.4142135623730951);
  if (j.contains("scales")) cfg.scales = j.at("scales").get<std::vector<int>>();
  if (j.contains("strategies")) {
    cfg.strategies.clear();
    for (const auto& name : j.at("strategies"))
      cfg.strategies.push_back(strategy_from_name(name.get<std::string>()));
  }
  cfg.deltas = j.value("deltas", true);
  cfg.seed = j.value("seed", 1ull);
  cfg.w_max = j.value("w_max", 20);
  cfg.added_link_capacity = j.value("added_link_capacity", 0.0);
  cfg.parallelism = j.value("parallelism", 1);
  cfg.table_format = j.value("table_format", std::string("csv")) == "markdown"
                         ? TableFormat::kMarkdown
                         : TableFormat::kCsv;
  cfg.table_precision = j.value("table_precision", std::string("3dp")) == "sig6"
                            ? TablePrecision::kSig6
                            : TablePrecision::k3dp;
  if (j.contains("tabu")) {
    const json& t = j.at("tabu");
    cfg.tabu.max_iterations = t.value("max_iterations", 1000);
    cfg.tabu.stall_limit = t.value("stall_limit", 300);
    cfg.tabu.tenure = t.value("tenure", 0);
    cfg.tabu.neighborhood_samples = t.value("neighborhood_samples", 10);
  }
  return cfg;
}

std::string join_csv(const std::vector<int>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i)
    out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

std::string join_csv_doubles(const std::vector<double>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i)
    out += (i ? "," : "") + fmt_shortest(v[i]);
  return out;
}

}  // namespace

std::string config_to_json(const ExperimentConfig& cfg) {
  return config_to_json_obj(cfg).dump(2);
}

ExperimentConfig config_from_json(const std::string& json_text) {
  json j = json::parse(json_text, nullptr, false);
  if (j.is_discarded())
    fail(ErrorCode::kConfigError, "config is not valid JSON");
  try {
    return config_from_json_obj(j);
  } catch (const json::exception& e) {
    fail(ErrorCode::kConfigError, std::string("bad config: ") + e.what());
  }
}

std::string emit_manifest(const ExperimentConfig& cfg) {
  std::string m;
  m += "ospfw_version=0.1.0\n";
  m += "topology_file=" + cfg.topology_file + "\n";
  m += "demands_file=" + cfg.demands_file + "\n";
  if (cfg.gen) {
    const GenSpec& g = *cfg.gen;
    m += std::string("gen.family=") + family_name(g.family) + "\n";
    m += "gen.node_count=" + std::to_string(g.node_count) + "\n";
    m += "gen.target_arc_count=" + std::to_string(g.target_arc_count) + "\n";
    m += "gen.edge_probability=" + fmt_shortest(g.edge_probability) + "\n";
    m += "gen.waxman_alpha=" + fmt_shortest(g.waxman_alpha) + "\n";
    m += "gen.waxman_beta=" + fmt_shortest(g.waxman_beta) + "\n";
    m += "gen.capacity_levels=" + join_csv_doubles(g.capacity_levels) + "\n";
    m += "gen.seed=" + std::to_string(g.seed) + "\n";
  }
  if (cfg.demand_spec) {
    const DemandSpec& d = *cfg.demand_spec;
    m += "demand.base_seed=" + std::to_string(d.base_seed) + "\n";
    m += "demand.scale_base=" + fmt_shortest(d.scale_base) + "\n";
    m += "demand.density=" + fmt_shortest(d.density) + "\n";
    m += "demand.magnitude=" + fmt_shortest(d.magnitude) + "\n";
  }
  m += "demand_multiplier=" + fmt_shortest(cfg.demand_multiplier) + "\n";
  m += "scale_base=" + fmt_shortest(cfg.scale_base) + "\n";
  m += "scales=" + join_csv(cfg.scales) + "\n";
  {
    std::string names;
    for (size_t i = 0; i < cfg.strategies.size(); ++i)
      names += (i ? "," : "") + std::string(strategy_name(cfg.strategies[i]));
    m += "strategies=" + names + "\n";
  }
  m += "deltas=" + std::string(cfg.deltas ? "1" : "0") + "\n";
  m += "seed=" + std::to_string(cfg.seed) + "\n";
  m += "w_max=" + std::to_string(cfg.w_max) + "\n";
  m += "added_link_capacity=" + fmt_shortest(cfg.added_link_capacity) + "\n";
  m += "parallelism=" + std::to_string(cfg.parallelism) + "\n";
  m += "tabu.max_iterations=" + std::to_string(cfg.tabu.max_iterations) + "\n";
  m += "tabu.stall_limit=" + std::to_string(cfg.tabu.stall_limit) + "\n";
  m += "tabu.tenure=" + std::to_string(cfg.tabu.tenure) + "\n";
  m += "tabu.neighborhood_samples=" +
       std::to_string(cfg.tabu.neighborhood_samples) + "\n";
  m += std::string("table_format=") +
       (cfg.table_format == TableFormat::kCsv ? "csv" : "markdown") + "\n";
  m += std::string("table_precision=") +
       (cfg.table_precision == TablePrecision::k3dp ? "3dp" : "sig6") + "\n";
  return m;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

double to_double(const std::string& s) {
  try {
    return std::stod(s);
  } catch (...) {
    fail(ErrorCode::kConfigError, "bad number '" + s + "' in manifest");
  }
}

int64_t to_int(const std::string& s) {
  try {
    return std::stoll(s);
  } catch (...) {
    fail(ErrorCode::kConfigError, "bad integer '" + s + "' in manifest");
  }
}

uint64_t to_uint(const std::string& s) {
  try {
    return std::stoull(s);
  } catch (...) {
    fail(ErrorCode::kConfigError, "bad integer '" + s + "' in manifest");
  }
}

}  // namespace

ExperimentConfig parse_manifest(const std::string& text) {
  ExperimentConfig cfg;
  cfg.strategies.clear();
  GenSpec gen;
  DemandSpec demand;
  bool has_gen = false, has_demand = false;

  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::kConfigError, "manifest line without '=': " + line);
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);

    if (key == "ospfw_version") continue;
    else if (key == "topology_file") cfg.topology_file = value;
    else if (key == "demands_file") cfg.demands_file = value;
    else if (key == "gen.family") { gen.family = family_from_name(value); has_gen = true; }
    else if (key == "gen.node_count") { gen.node_count = static_cast<uint32_t>(to_int(value)); has_gen = true; }
    else if (key == "gen.target_arc_count") { gen.target_arc_count = static_cast<uint32_t>(to_int(value)); has_gen = true; }
    else if (key == "gen.edge_probability") { gen.edge_probability = to_double(value); has_gen = true; }
    else if (key == "gen.waxman_alpha") { gen.waxman_alpha = to_double(value); has_gen = true; }
    else if (key == "gen.waxman_beta") { gen.waxman_beta = to_double(value); has_gen = true; }
    else if (key == "gen.capacity_levels") {
      gen.capacity_levels.clear();
      for (const auto& tok : split(value, ',')) gen.capacity_levels.push_back(to_double(tok));
      has_gen = true;
    }
    else if (key == "gen.seed") { gen.seed = to_uint(value); has_gen = true; }
    else if (key == "demand.base_seed") { demand.base_seed = to_uint(value); has_demand = true; }
    else if (key == "demand.scale_base") { demand.scale_base = to_double(value); has_demand = true; }
    else if (key == "demand.density") { demand.density = to_double(value); has_demand = true; }
    else if (key == "demand.magnitude") { demand.magnitude = to_double(value); has_demand = true; }
    else if (key == "demand_multiplier") cfg.demand_multiplier = to_double(value);
    else if (key == "scale_base") cfg.scale_base = to_double(value);
    else if (key == "scales") {
      cfg.scales.clear();
      for (const auto& tok : split(value, ',')) cfg.scales.push_back(static_cast<int>(to_int(tok)));
    }
    else if (key == "strategies") {
      for (const auto& tok : split(value, ',')) cfg.strategies.push_back(strategy_from_name(tok));
    }
    else if (key == "deltas") cfg.deltas = value != "0";
    else if (key == "seed") cfg.seed = to_uint(value);
    else if (key == "w_max") cfg.w_max = static_cast<int>(to_int(value));
    else if (key == "added_link_capacity") cfg.added_link_capacity = to_double(value);
    else if (key == "parallelism") cfg.parallelism = static_cast<int>(to_int(value));
    else if (key == "tabu.max_iterations") cfg.tabu.max_iterations = static_cast<int>(to_int(value));
    else if (key == "tabu.stall_limit") cfg.tabu.stall_limit = static_cast<int>(to_int(value));
    else if (key == "tabu.tenure") cfg.tabu.tenure = static_cast<int>(to_int(value));
    else if (key == "tabu.neighborhood_samples") cfg.tabu.neighborhood_samples = static_cast<int>(to_int(value));
    else if (key == "table_format") cfg.table_format = value == "markdown" ? TableFormat::kMarkdown : TableFormat::kCsv;
    else if (key == "table_precision") cfg.table_precision = value == "sig6" ? TablePrecision::kSig6 : TablePrecision::k3dp;
    else fail(ErrorCode::kConfigError, "unknown manifest key '" + key + "'");
  }
  if (has_gen) cfg.gen = gen;
  if (has_demand) cfg.demand_spec = demand;
  if (cfg.strategies.empty())
    cfg.strategies = {Strategy::kOh, Strategy::kFt, Strategy::kSs};
  return cfg;
}

// --- report JSON -------------------------------------------------------------

std::string report_to_json(const ExperimentReport& report) {
  json j;
  j["config"] = config_to_json_obj(report.config);
  j["instance"] = {{"nodes", report.nodes},
                   {"arcs_normal", report.arcs_normal},
                   {"critical_pair", {report.critical_lo, report.critical_hi}},
                   {"added_capacity", report.added_capacity}};
  json runs = json::array();
  for (const RunRecord& r : report.runs) {
    json jr{{"scale", r.scale},
            {"strategy", strategy_name(r.strategy)},
            {"ok", r.ok},
            {"wall_ms", r.wall_ms}};
    if (!r.ok) {
      jr["error"] = r.error;
    } else {
      jr["cost_norm"] = r.result.cost_norm;
      jr["cost_fail"] = r.result.cost_fail;
      jr["objective"] = r.result.objective;
      jr["seed"] = r.result.params.seed;
      jr["weights"] = serialize_weights(r.result.weights);
      if (r.strategy == Strategy::kSs)
        jr["ss_added_weight"] = r.result.ss_added_weight;
      json entries = json::array();
      for (const TraceEntry& e : r.result.trace.entries)
        entries.push_back({e.iteration, e.candidate_cost, e.best_cost,
                           e.moved_arc});
      jr["trace"] = {{"initial_cost", r.result.trace.initial_cost},
                     {"entries", entries}};
    }
    runs.push_back(std::move(jr));
  }
  j["runs"] = std::move(runs);
  json deltas = json::array();
  for (const DeltaRecord& d : report.deltas)
    deltas.push_back({{"scale", d.scale},
                      {"challenger", strategy_name(d.challenger)},
                      {"delta_norm", d.deltas.delta_norm},
                      {"delta_fail", d.deltas.delta_fail},
                      {"delta", d.deltas.delta}});
  j["deltas"] = std::move(deltas);
  return j.dump(2);
}

ExperimentReport report_from_json(const std::string& json_text) {
  json j = json::parse(json_text, nullptr, false);
  if (j.is_discarded())
    fail(ErrorCode::kConfigError, "report is not valid JSON");
  try {
    ExperimentReport report;
    report.config = config_from_json_obj(j.at("config"));
    const json& inst = j.at("instance");
    report.nodes = inst.at("nodes").get<uint32_t>();
    report.arcs_normal = inst.at("arcs_normal").get<uint32_t>();
    report.critical_lo = inst.at("critical_pair")[0].get<NodeId>();
    report.critical_hi = inst.at("critical_pair")[1].get<NodeId>();
    report.added_capacity = inst.at("added_capacity").get<double>();
    for (const json& jr : j.at("runs")) {
      RunRecord r;
      r.scale = jr.at("scale").get<int>();
      r.strategy = strategy_from_name(jr.at("strategy").get<std::string>());
      r.ok = jr.at("ok").get<bool>();
      r.wall_ms = jr.value("wall_ms", 0.0);
      if (!r.ok) {
        r.error = jr.value("error", std::string{});
      } else {
        r.result.strategy = r.strategy;
        r.result.cost_norm = jr.at("cost_norm").get<double>();
        r.result.cost_fail = jr.at("cost_fail").get<double>();
        r.result.objective = jr.at("objective").get<double>();
        r.result.params.seed = jr.value("seed", 0ull);
        r.result.ss_added_weight = jr.value("ss_added_weight", 0);
        if (jr.contains("trace")) {
          const json& tr = jr.at("trace");
          r.result.trace.initial_cost = tr.at("initial_cost").get<double>();
          for (const json& e : tr.at("entries"))
            r.result.trace.entries.push_back(
                TraceEntry{e[0].get<int>(), e[1].get<double>(),
                           e[2].get<double>(), e[3].get<int32_t>()});
        }
      }
      report.runs.push_back(std::move(r));
    }
    for (const json& jd : j.at("deltas")) {
      DeltaRecord d;
      d.scale = jd.at("scale").get<int>();
      d.challenger = strategy_from_name(jd.at("challenger").get<std::string>());
      d.deltas.delta_norm = jd.at("delta_norm").get<double>();
      d.deltas.delta_fail = jd.at("delta_fail").get<double>();
      d.deltas.delta = jd.at("delta").get<double>();
      report.deltas.push_back(d);
    }
    return report;
  } catch (const json::exception& e) {
    fail(ErrorCode::kConfigError, std::string("bad report: ") + e.what());
  }
}

}  // namespace ospfw
