#include "ospfw/routing.hpp"

#include <algorithm>

namespace ospfw {

FlowComputer::FlowComputer(const Topology& topo) : topo_(topo) {
  dist_.resize(topo.node_count());
  node_flow_.resize(topo.node_count());
  totals_.resize(topo.arc_count());
  scratch_.resize(topo.arc_count());
  order_.reserve(topo.node_count());
  heap_.reserve(topo.node_count());
}

void FlowComputer::run_dijkstra(const WeightVector& w, NodeId dest) {
  std::fill(dist_.begin(), dist_.end(), kUnreachable);
  dist_[dest] = 0;
  heap_.clear();
  heap_.push_back({0, dest});
  // Min-heap on (dist, node); ties pop the smaller node index first.
  auto cmp = [](const auto& a, const auto& b) { return a > b; };
  while (!heap_.empty()) {
    std::pop_heap(heap_.begin(), heap_.end(), cmp);
    auto [d, v] = heap_.back();
    heap_.pop_back();
    if (d != dist_[v]) continue;  // stale entry
    for (uint32_t idx : topo_.in_arcs(v)) {
      const Arc& a = topo_.arc(idx);
      const int64_t cand = d + w.values[idx];
      if (cand < dist_[a.src]) {
        dist_[a.src] = cand;
        heap_.push_back({cand, a.src});
        std::push_heap(heap_.begin(), heap_.end(), cmp);
      }
    }
  }
}

void FlowComputer::destination_loads(const WeightVector& w,
                                     const DemandMatrix& dm, NodeId dest,
                                     std::vector<double>& out) {
  run_dijkstra(w, dest);

  std::fill(node_flow_.begin(), node_flow_.end(), 0.0);
  for (const auto& e : dm.to_destination(dest)) {
    if (dist_[e.src] == kUnreachable)
      fail(ErrorCode::kUnroutableDemand,
           "no path from " + std::to_string(e.src) + " to " +
               std::to_string(dest));
    node_flow_[e.src] += e.value;
  }

  // Process nodes farthest-first so each node's inflow is final before it
  // splits. Shortest-path arcs strictly decrease distance (weights >= 1).
  order_.clear();
  for (NodeId u = 0; u < topo_.node_count(); ++u)
    if (u != dest && dist_[u] != kUnreachable) order_.push_back(u);
  std::sort(order_.begin(), order_.end(), [&](NodeId a, NodeId b) {
    if (dist_[a] != dist_[b]) return dist_[a] > dist_[b];
    return a < b;
  });

  for (NodeId u : order_) {
    const double flow = node_flow_[u];
    if (flow == 0.0) continue;
    int sp_degree = 0;
    for (uint32_t idx : topo_.out_arcs(u)) {
      const Arc& a = topo_.arc(idx);
      if (dist_[a.dst] != kUnreachable &&
          dist_[u] == w.values[idx] + dist_[a.dst])
        ++sp_degree;
    }
    const double share = flow / sp_degree;
    for (uint32_t idx : topo_.out_arcs(u)) {
      const Arc& a = topo_.arc(idx);
      if (dist_[a.dst] != kUnreachable &&
          dist_[u] == w.values[idx] + dist_[a.dst]) {
        out[idx] += share;
        node_flow_[a.dst] += share;
      }
    }
  }
}

const std::vector<double>& FlowComputer::totals(const WeightVector& w,
                                                const DemandMatrix& dm) {
  std::fill(totals_.begin(), totals_.end(), 0.0);
  for (NodeId dest : dm.destinations()) {
    std::fill(scratch_.begin(), scratch_.end(), 0.0);
    destination_loads(w, dm, dest, scratch_);
    for (uint32_t a = 0; a < topo_.arc_count(); ++a) totals_[a] += scratch_[a];
  }
  return totals_;
}

DistanceVector distances_to(const Topology& topo, const WeightVector& w,
                            NodeId dest) {
  validate_weights(w, topo);
  if (dest >= topo.node_count())
    fail(ErrorCode::kNodeOutOfRange, "destination out of range");
  FlowComputer fc(topo);
  fc.run_dijkstra(w, dest);
  return DistanceVector{dest, fc.dist()};
}

std::vector<uint32_t> shortest_path_arcs(const Topology& topo,
                                         const WeightVector& w,
                                         const DistanceVector& dv) {
  std::vector<uint32_t> arcs;
  for (uint32_t idx = 0; idx < topo.arc_count(); ++idx) {
    const Arc& a = topo.arc(idx);
    if (dv.dist[a.src] == kUnreachable || dv.dist[a.dst] == kUnreachable)
      continue;
    if (dv.dist[a.src] == w.values[idx] + dv.dist[a.dst]) arcs.push_back(idx);
  }
  return arcs;
}

std::vector<double> partial_loads(const Topology& topo, const WeightVector& w,
                                  const DemandMatrix& dm, NodeId dest) {
  validate_weights(w, topo);
  if (dest >= topo.node_count())
    fail(ErrorCode::kNodeOutOfRange, "destination out of range");
  FlowComputer fc(topo);
  std::vector<double> out(topo.arc_count(), 0.0);
  fc.destination_loads(w, dm, dest, out);
  return out;
}

FlowSolution total_loads(const Topology& topo, const WeightVector& w,
                         const DemandMatrix& dm) {
  validate_weights(w, topo);
  FlowSolution fs;
  fs.total.assign(topo.arc_count(), 0.0);
  FlowComputer fc(topo);
  for (NodeId dest : dm.destinations()) {
    std::vector<double> loads(topo.arc_count(), 0.0);
    fc.destination_loads(w, dm, dest, loads);
    for (uint32_t a = 0; a < topo.arc_count(); ++a) fs.total[a] += loads[a];
    fs.destinations.push_back(dest);
    fs.partial.push_back(std::move(loads));
  }
  return fs;
}

}  // namespace ospfw
