#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ospfw/errors.hpp"

namespace ospfw {

using NodeId = uint32_t;

struct Arc {
  NodeId src = 0;
  NodeId dst = 0;
  double capacity = 0.0;

  bool operator==(const Arc&) const = default;
};

// Unordered node pair naming the set of arcs between two nodes.
struct LinkId {
  NodeId lo = 0;
  NodeId hi = 0;

  static LinkId of(NodeId u, NodeId v) {
    return u < v ? LinkId{u, v} : LinkId{v, u};
  }

  bool operator==(const LinkId&) const = default;
};

// Immutable directed capacitated graph. Arc index = position in the arc
// list; at most one arc per ordered (src, dst) pair.
class Topology {
 public:
  Topology(uint32_t node_count, std::vector<Arc> arcs);

  uint32_t node_count() const { return node_count_; }
  uint32_t arc_count() const { return static_cast<uint32_t>(arcs_.size()); }
  const Arc& arc(uint32_t index) const { return arcs_[index]; }
  const std::vector<Arc>& arcs() const { return arcs_; }

  // Arc indices leaving u / entering v, ascending.
  std::span<const uint32_t> out_arcs(NodeId u) const;
  std::span<const uint32_t> in_arcs(NodeId v) const;

  // Index of the ordered arc (u, v), or -1 if absent.
  int32_t find_arc(NodeId u, NodeId v) const;

  // Largest capacity over all arcs; 0 if there are none.
  double max_capacity() const { return max_capacity_; }

  bool operator==(const Topology& other) const {
    return node_count_ == other.node_count_ && arcs_ == other.arcs_;
  }

 private:
  uint32_t node_count_;
  std::vector<Arc> arcs_;
  std::vector<uint32_t> out_start_, out_idx_;
  std::vector<uint32_t> in_start_, in_idx_;
  double max_capacity_ = 0.0;
};

// Non-negative traffic demand per ordered node pair; absent pairs are zero.
class DemandMatrix {
 public:
  struct Entry {
    NodeId src = 0;
    NodeId dst = 0;
    double value = 0.0;

    bool operator==(const Entry&) const = default;
  };

  DemandMatrix(uint32_t node_count, std::vector<Entry> entries);

  uint32_t node_count() const { return node_count_; }

  // Positive entries, sorted by (src, dst).
  const std::vector<Entry>& entries() const { return entries_; }

  double at(NodeId src, NodeId dst) const;

  // Destinations with positive inbound demand, ascending.
  const std::vector<NodeId>& destinations() const { return destinations_; }

  // (source, value) pairs for one destination, sources ascending.
  std::span<const Entry> to_destination(NodeId dst) const;

  double total() const { return total_; }

  // New matrix with every entry multiplied by factor (> 0).
  DemandMatrix scaled(double factor) const;

  bool operator==(const DemandMatrix& other) const {
    return node_count_ == other.node_count_ && entries_ == other.entries_;
  }

 private:
  uint32_t node_count_;
  std::vector<Entry> entries_;       // sorted by (src, dst)
  std::vector<Entry> by_dest_;       // sorted by (dst, src)
  std::vector<uint32_t> dest_start_; // node_count_+1 offsets into by_dest_
  std::vector<NodeId> destinations_;
  double total_ = 0.0;
};

// One positive integer weight per arc index, each in [1, w_max].
struct WeightVector {
  std::vector<int> values;
  int w_max = 20;
};

// Throws kBadWeight unless w fits topo and every value is in [1, w_max].
void validate_weights(const WeightVector& w, const Topology& topo);

// --- file formats ---------------------------------------------------------
// Topology file: "nodes <N>" then "arc <src> <dst> <capacity>" lines.
// Demand file:   "demand <src> <dst> <value>" lines.
// Weight file:   "weight <arc_index> <w>" lines, one per arc.
// '#' starts a comment; tokens are whitespace-separated.

Topology parse_topology(const std::string& text);
std::string serialize_topology(const Topology& topo);

DemandMatrix parse_demands(const std::string& text, const Topology& topo);
std::string serialize_demands(const DemandMatrix& dm);

WeightVector parse_weights(const std::string& text, const Topology& topo,
                           int w_max);
std::string serialize_weights(const WeightVector& w);

// --- topology surgery -----------------------------------------------------

struct AddLinkResult {
  Topology topology;
  uint32_t first_added_arc;  // arcs (u,v) and (v,u) at first_added_arc, +1
};

// Appends the opposite arc pair (u,v),(v,u) with the given capacity.
AddLinkResult add_link(const Topology& topo, NodeId u, NodeId v,
                       double capacity);

struct FailLinkResult {
  Topology topology;
  std::vector<int32_t> arc_remap;  // old arc index -> new index, -1 if removed
};

// Removes every arc between the link's endpoints, both directions.
FailLinkResult fail_link(const Topology& topo, LinkId link);

// Carries weights across a fail_link remap.
WeightVector remap_weights(const WeightVector& w,
                           const std::vector<int32_t>& arc_remap);

// Demand pairs with positive demand and no directed path; empty means
// fully routable. Sorted by (src, dst).
std::vector<std::pair<NodeId, NodeId>> check_connectivity(
    const Topology& topo, const DemandMatrix& dm);

}  // namespace ospfw
