#include "ospfw/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace ospfw {

namespace {

uint64_t enumeration_size(int w_max, uint32_t arc_count, uint64_t ceiling) {
  if (w_max < 1) fail(ErrorCode::kBadParams, "w_max must be >= 1");
  uint64_t count = 1;
  for (uint32_t a = 0; a < arc_count; ++a) {
    if (count > ceiling / static_cast<uint64_t>(w_max))
      fail(ErrorCode::kTooLarge,
           "enumeration of " + std::to_string(w_max) + "^" +
               std::to_string(arc_count) + " weight vectors exceeds ceiling " +
               std::to_string(ceiling));
    count *= static_cast<uint64_t>(w_max);
  }
  return count;
}

// Lexicographic odometer over weight vectors, last position fastest.
bool advance(std::vector<int>& values, int w_max) {
  for (size_t i = values.size(); i-- > 0;) {
    if (values[i] < w_max) {
      ++values[i];
      std::fill(values.begin() + static_cast<ptrdiff_t>(i) + 1, values.end(),
                1);
      return true;
    }
  }
  return false;
}

template <typename CostFn>
OracleResult enumerate_all(uint32_t arc_count, int w_max, uint64_t ceiling,
                           CostFn&& cost_of) {
  OracleResult result;
  result.evaluated_count = enumeration_size(w_max, arc_count, ceiling);

  WeightVector w;
  w.w_max = w_max;
  w.values.assign(arc_count, 1);
  bool first = true;
  do {
    const double cost = cost_of(w);
    if (first || cost < result.best_cost) {
      first = false;
      result.best_cost = cost;
      result.best_weights = w;
    }
  } while (advance(w.values, w_max));
  return result;
}

}  // namespace

OracleResult brute_force_single(const Topology& topo, const DemandMatrix& dm,
                                int w_max, uint64_t ceiling) {
  const double uncap = uncap_cost(topo, dm);
  if (!(uncap > 0.0))
    fail(ErrorCode::kZeroUncap, "nothing to optimize: no demand");
  FlowComputer flow(topo);
  return enumerate_all(topo.arc_count(), w_max, ceiling,
                       [&](const WeightVector& w) {
                         return cost_of_totals(flow.totals(w, dm), topo).total /
                                uncap;
                       });
}

OracleResult brute_force_paired(const FailureScenario& sc, int w_max,
                                uint64_t ceiling) {
  PairEvaluator pe(sc);
  return enumerate_all(
      sc.t_norm.arc_count(), w_max, ceiling,
      [&](const WeightVector& w) { return pe.both(w).averaged_cost; });
}

std::vector<double> enumerate_pair_flows(const Topology& topo,
                                         const WeightVector& w, NodeId src,
                                         NodeId dst, double demand) {
  if (topo.node_count() > 12)
    fail(ErrorCode::kTooLarge, "path enumeration limited to 12 nodes");
  validate_weights(w, topo);
  if (src >= topo.node_count() || dst >= topo.node_count())
    fail(ErrorCode::kNodeOutOfRange, "pair endpoint out of range");

  // Bellman-Ford toward dst (deliberately not Dijkstra).
  const int64_t inf = kUnreachable;
  std::vector<int64_t> dist(topo.node_count(), inf);
  dist[dst] = 0;
  for (uint32_t round = 0; round + 1 < topo.node_count(); ++round) {
    bool changed = false;
    for (uint32_t a = 0; a < topo.arc_count(); ++a) {
      const Arc& arc = topo.arc(a);
      if (dist[arc.dst] == inf) continue;
      const int64_t cand = dist[arc.dst] + w.values[a];
      if (cand < dist[arc.src]) {
        dist[arc.src] = cand;
        changed = true;
      }
    }
    if (!changed) break;
  }
  if (demand > 0.0 && dist[src] == inf)
    fail(ErrorCode::kUnroutableDemand,
         "no path from " + std::to_string(src) + " to " + std::to_string(dst));

  std::vector<int> sp_degree(topo.node_count(), 0);
  for (uint32_t a = 0; a < topo.arc_count(); ++a) {
    const Arc& arc = topo.arc(a);
    if (dist[arc.src] != inf && dist[arc.dst] != inf &&
        dist[arc.src] == w.values[a] + dist[arc.dst])
      ++sp_degree[arc.src];
  }

  std::vector<double> loads(topo.arc_count(), 0.0);
  if (demand == 0.0) return loads;

  // Walk every shortest path, splitting the carried fraction evenly at
  // each node. Recursion depth is bounded by the node count.
  auto descend = [&](auto&& self, NodeId u, double fraction) -> void {
    if (u == dst) return;
    const double share = fraction / sp_degree[u];
    for (uint32_t a : topo.out_arcs(u)) {
      const Arc& arc = topo.arc(a);
      if (dist[arc.dst] == inf || dist[u] != w.values[a] + dist[arc.dst])
        continue;
      loads[a] += demand * share;
      self(self, arc.dst, share);
    }
  };
  descend(descend, src, 1.0);
  return loads;
}

}  // namespace ospfw
