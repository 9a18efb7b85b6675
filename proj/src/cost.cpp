#include "ospfw/cost.hpp"

#include <algorithm>
#include <deque>

namespace ospfw {

double arc_cost(double load, double capacity, CostKind kind) {
  if (load < 0.0)
    fail(ErrorCode::kBadParams, "arc load must be >= 0");
  if (!(capacity > 0.0))
    fail(ErrorCode::kNonPositiveCapacity, "arc capacity must be > 0");

  if (kind == CostKind::kStep) {
    const double util = load / capacity;
    int band = 0;
    while (band < 5 && util >= kUtilBreaks[band]) ++band;
    return kBandSlopes[band];
  }

  double value = 0.0;
  double prev_break = 0.0;
  for (int band = 0; band < 5; ++band) {
    const double brk = capacity * kUtilBreaks[band];
    if (load <= brk) return value + kBandSlopes[band] * (load - prev_break);
    value += kBandSlopes[band] * (brk - prev_break);
    prev_break = brk;
  }
  return value + kBandSlopes[5] * (load - prev_break);
}

PhiResult cost_of_totals(std::span<const double> totals, const Topology& topo,
                         CostKind kind) {
  PhiResult r;
  for (uint32_t a = 0; a < topo.arc_count(); ++a) {
    const double cap = topo.arc(a).capacity;
    r.total += arc_cost(totals[a], cap, kind);
    r.max_utilization = std::max(r.max_utilization, totals[a] / cap);
  }
  return r;
}

CostReport network_cost(const FlowSolution& fs, const Topology& topo,
                        CostKind kind) {
  CostReport report;
  report.per_arc.resize(topo.arc_count());
  for (uint32_t a = 0; a < topo.arc_count(); ++a) {
    const double cap = topo.arc(a).capacity;
    report.per_arc[a] = arc_cost(fs.total[a], cap, kind);
    report.total += report.per_arc[a];
    report.max_utilization = std::max(report.max_utilization, fs.total[a] / cap);
  }
  return report;
}

double uncap_cost(const Topology& topo, const DemandMatrix& dm) {
  double sum = 0.0;
  std::vector<int32_t> hops(topo.node_count());
  std::deque<NodeId> queue;
  for (NodeId dst : dm.destinations()) {
    std::fill(hops.begin(), hops.end(), -1);
    hops[dst] = 0;
    queue.assign(1, dst);
    while (!queue.empty()) {
      NodeId v = queue.front();
      queue.pop_front();
      for (uint32_t idx : topo.in_arcs(v)) {
        NodeId u = topo.arc(idx).src;
        if (hops[u] < 0) {
          hops[u] = hops[v] + 1;
          queue.push_back(u);
        }
      }
    }
    for (const auto& e : dm.to_destination(dst)) {
      if (hops[e.src] < 0)
        fail(ErrorCode::kUnroutableDemand,
             "no path from " + std::to_string(e.src) + " to " +
                 std::to_string(dst));
      sum += e.value * hops[e.src];
    }
  }
  return sum;
}

double normalized_cost(double total_cost, double uncap) {
  if (!(uncap > 0.0))
    fail(ErrorCode::kZeroUncap, "uncapacitated cost is zero; nothing to route");
  return total_cost / uncap;
}

CostReport evaluate(const Topology& topo, const WeightVector& w,
                    const DemandMatrix& dm, CostKind kind) {
  const FlowSolution fs = total_loads(topo, w, dm);
  CostReport report = network_cost(fs, topo, kind);
  report.normalized = normalized_cost(report.total, uncap_cost(topo, dm));
  return report;
}

}  // namespace ospfw
