#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "ospfw/net.hpp"

namespace ospfw {

inline constexpr int64_t kUnreachable = std::numeric_limits<int64_t>::max();

// Shortest weighted distance from every node TO dest.
struct DistanceVector {
  NodeId dest = 0;
  std::vector<int64_t> dist;  // kUnreachable where no path exists
};

// Per-destination partial loads and their per-arc totals.
struct FlowSolution {
  std::vector<NodeId> destinations;          // ascending, inbound demand > 0
  std::vector<std::vector<double>> partial;  // parallel to destinations
  std::vector<double> total;                 // per arc
};

DistanceVector distances_to(const Topology& topo, const WeightVector& w,
                            NodeId dest);

// Arc indices on some shortest path toward dv.dest, ascending:
// arc (u,v) qualifies iff dist[u] is finite and dist[u] == w(u,v) + dist[v].
std::vector<uint32_t> shortest_path_arcs(const Topology& topo,
                                         const WeightVector& w,
                                         const DistanceVector& dv);

// Per-arc load toward one destination under even ECMP splitting.
std::vector<double> partial_loads(const Topology& topo, const WeightVector& w,
                                  const DemandMatrix& dm, NodeId dest);

FlowSolution total_loads(const Topology& topo, const WeightVector& w,
                         const DemandMatrix& dm);

// Reusable workspace for the search hot path: same arithmetic as
// total_loads, no per-call allocation.
class FlowComputer {
 public:
  explicit FlowComputer(const Topology& topo);

  // Per-arc totals over all destinations with inbound demand. The returned
  // reference is valid until the next call.
  const std::vector<double>& totals(const WeightVector& w,
                                    const DemandMatrix& dm);

  // Loads toward one destination, written into `out` (arc_count doubles,
  // zeroed first). Also used by total_loads/partial_loads.
  void destination_loads(const WeightVector& w, const DemandMatrix& dm,
                         NodeId dest, std::vector<double>& out);

  void run_dijkstra(const WeightVector& w, NodeId dest);
  const std::vector<int64_t>& dist() const { return dist_; }

 private:
  const Topology& topo_;
  std::vector<int64_t> dist_;
  std::vector<double> node_flow_;
  std::vector<double> totals_;
  std::vector<double> scratch_;
  std::vector<NodeId> order_;
  std::vector<std::pair<int64_t, NodeId>> heap_;
};

}  // namespace ospfw
