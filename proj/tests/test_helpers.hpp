#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ospfw/errors.hpp"
#include "ospfw/net.hpp"

namespace ospfw::testing {

// Runs fn and reports the ErrorCode it threw; fails the test if it did not
// throw an ospfw::Error.
template <typename Fn>
ErrorCode thrown_code(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  throw std::runtime_error("expected ospfw::Error, none was thrown");
}

inline Topology make_topology(uint32_t nodes,
                              std::vector<Arc> arcs) {
  return Topology(nodes, std::move(arcs));
}

// Directed chain 0 -> 1 -> ... -> n-1, capacity per arc.
inline Topology chain(uint32_t nodes, double capacity) {
  std::vector<Arc> arcs;
  for (uint32_t i = 0; i + 1 < nodes; ++i)
    arcs.push_back({i, i + 1, capacity});
  return Topology(nodes, std::move(arcs));
}

// Symmetric ring 0 - 1 - ... - n-1 - 0 (both directions per link).
inline Topology ring(uint32_t nodes, double capacity) {
  std::vector<Arc> arcs;
  for (uint32_t i = 0; i < nodes; ++i) {
    const uint32_t j = (i + 1) % nodes;
    arcs.push_back({i, j, capacity});
    arcs.push_back({j, i, capacity});
  }
  return Topology(nodes, std::move(arcs));
}

inline DemandMatrix demands(const Topology& topo,
                            std::vector<DemandMatrix::Entry> entries) {
  return DemandMatrix(topo.node_count(), std::move(entries));
}

inline WeightVector unit_weights(const Topology& topo, int w_max = 20) {
  return WeightVector{std::vector<int>(topo.arc_count(), 1), w_max};
}

}  // namespace ospfw::testing
