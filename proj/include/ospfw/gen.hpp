#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "ospfw/net.hpp"
#include "ospfw/rng.hpp"

namespace ospfw {

enum class GraphFamily { kRandom, kWaxman, kHier2 };

const char* family_name(GraphFamily f);
GraphFamily family_from_name(std::string_view name);

struct GenSpec {
  GraphFamily family = GraphFamily::kRandom;
  uint32_t node_count = 50;
  // Either a target arc count (two arcs per undirected edge) or an edge
  // probability; target wins when both are set.
  uint32_t target_arc_count = 0;
  double edge_probability = 0.0;
  // Waxman parameters; alpha <= 0 derives alpha from target_arc_count.
  double waxman_alpha = 0.0;
  double waxman_beta = 0.6;
  std::vector<double> capacity_levels = {100.0, 200.0, 400.0, 1000.0};
  uint64_t seed = 1;
};

struct DemandSpec {
  uint64_t base_seed = 1;
  int scale_index = 0;
  double scale_base = 1.4142135623730951;  // sqrt(2)
  double density = 0.3;    // fraction of ordered pairs with positive demand
  double magnitude = 1.0;  // mean size of a base entry
};

// Raw undirected edge sample for the family, before connectivity repair.
// Exposed so the edge-count statistics are testable.
std::vector<std::pair<NodeId, NodeId>> sample_edges(const GenSpec& spec,
                                                    Rng& rng);

// Symmetric-link topology, guaranteed strongly connected. Capacities are
// drawn per link from capacity_levels.
Topology gen_topology(const GenSpec& spec);

// Seeded demands: the pair subset and base values depend only on
// base_seed; scale_index applies scale_base multiplicatively, so
// consecutive scales differ by exactly one multiplication.
DemandMatrix gen_demands(const Topology& topo, const DemandSpec& spec);

// Named generation targets shaped like common 50/100-node benchmarks:
// h50, h100 (2-level hierarchies), r50, r100 (uniform random),
// w50, w100 (Waxman).
GenSpec preset_spec(std::string_view name, uint64_t seed);

}  // namespace ospfw
