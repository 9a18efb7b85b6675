#pragma once

#include <cstdint>
#include <vector>

#include "ospfw/net.hpp"
#include "ospfw/strategy.hpp"

namespace ospfw {

inline constexpr uint64_t kDefaultEnumerationCeiling = 10'000'000;

struct OracleResult {
  double best_cost = 0.0;
  WeightVector best_weights;
  uint64_t evaluated_count = 0;
};

// Global minimum normalized cost over every legal weight vector,
// enumerated lexicographically; ties keep the first (smallest) vector.
OracleResult brute_force_single(const Topology& topo, const DemandMatrix& dm,
                                int w_max,
                                uint64_t ceiling = kDefaultEnumerationCeiling);

// Global minimum of the paired average cost over every weight vector on
// t_norm.
OracleResult brute_force_paired(const FailureScenario& sc, int w_max,
                                uint64_t ceiling = kDefaultEnumerationCeiling);

// Per-arc loads for one (src, dst, demand) by explicitly enumerating every
// shortest path and splitting per ECMP at each node. Bellman-Ford based;
// independent of the Dijkstra routing path.
std::vector<double> enumerate_pair_flows(const Topology& topo,
                                         const WeightVector& w, NodeId src,
                                         NodeId dst, double demand);

}  // namespace ospfw
