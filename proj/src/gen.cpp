#include "ospfw/gen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

namespace ospfw {

const char* family_name(GraphFamily f) {
  switch (f) {
    case GraphFamily::kRandom: return "RANDOM";
    case GraphFamily::kWaxman: return "WAXMAN";
    case GraphFamily::kHier2: return "HIER2";
  }
  return "?";
}

GraphFamily family_from_name(std::string_view name) {
  if (name == "RANDOM") return GraphFamily::kRandom;
  if (name == "WAXMAN") return GraphFamily::kWaxman;
  if (name == "HIER2") return GraphFamily::kHier2;
  fail(ErrorCode::kConfigError,
       "unknown graph family '" + std::string(name) + "'");
}

namespace {

using Edge = std::pair<NodeId, NodeId>;

void validate_spec(const GenSpec& spec) {
  if (spec.node_count < 2)
    fail(ErrorCode::kBadParams, "node_count must be >= 2");
  if (spec.capacity_levels.empty())
    fail(ErrorCode::kBadParams, "capacity_levels must not be empty");
  for (double c : spec.capacity_levels)
    if (!(c > 0.0))
      fail(ErrorCode::kBadParams, "capacity levels must be positive");
  if (spec.target_arc_count == 0 && spec.edge_probability <= 0.0 &&
      !(spec.family == GraphFamily::kWaxman && spec.waxman_alpha > 0.0) &&
      spec.family != GraphFamily::kHier2)
    fail(ErrorCode::kBadParams,
         "need target_arc_count, edge_probability or waxman_alpha");
  if (spec.family == GraphFamily::kWaxman &&
      (spec.waxman_beta <= 0.0 || spec.waxman_beta > 1.0))
    fail(ErrorCode::kBadParams, "waxman_beta must be in (0, 1]");
}

// Chooses k distinct unordered pairs uniformly, by partial Fisher-Yates
// over pair ranks.
std::vector<Edge> sample_exact_pairs(uint32_t n, uint64_t k, Rng& rng) {
  const uint64_t total = static_cast<uint64_t>(n) * (n - 1) / 2;
  k = std::min(k, total);
  std::vector<uint64_t> ranks(total);
  std::iota(ranks.begin(), ranks.end(), 0);
  std::vector<Edge> edges;
  edges.reserve(k);
  for (uint64_t i = 0; i < k; ++i) {
    const uint64_t j =
        static_cast<uint64_t>(rng.uniform_int(static_cast<int64_t>(i),
                                              static_cast<int64_t>(total) - 1));
    std::swap(ranks[i], ranks[j]);
    // Decode rank -> (u, v) with u < v.
    uint64_t r = ranks[i];
    NodeId u = 0;
    uint64_t row = n - 1;
    while (r >= row) {
      r -= row;
      --row;
      ++u;
    }
    edges.emplace_back(u, static_cast<NodeId>(u + 1 + r));
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

std::vector<Edge> sample_random(const GenSpec& spec, Rng& rng) {
  if (spec.target_arc_count > 0)
    return sample_exact_pairs(spec.node_count,
                              (spec.target_arc_count + 1) / 2, rng);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < spec.node_count; ++u)
    for (NodeId v = u + 1; v < spec.node_count; ++v)
      if (rng.uniform01() < spec.edge_probability) edges.emplace_back(u, v);
  return edges;
}

std::vector<Edge> sample_waxman(const GenSpec& spec, Rng& rng) {
  const uint32_t n = spec.node_count;
  std::vector<std::pair<double, double>> pos(n);
  for (auto& p : pos) {
    p.first = rng.uniform01();
    p.second = rng.uniform01();
  }
  double max_dist = 0.0;
  auto dist = [&](NodeId u, NodeId v) {
    const double dx = pos[u].first - pos[v].first;
    const double dy = pos[u].second - pos[v].second;
    return std::sqrt(dx * dx + dy * dy);
  };
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) max_dist = std::max(max_dist, dist(u, v));
  if (max_dist <= 0.0) max_dist = 1.0;

  double alpha = spec.waxman_alpha;
  if (alpha <= 0.0) {
    // Pick alpha so the expected edge count matches the target.
    double sum = 0.0;
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = u + 1; v < n; ++v)
        sum += std::exp(-dist(u, v) / (spec.waxman_beta * max_dist));
    const double want = (spec.target_arc_count + 1) / 2;
    alpha = sum > 0.0 ? std::min(1.0, want / sum) : 0.0;
  }

  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) {
      const double p =
          alpha * std::exp(-dist(u, v) / (spec.waxman_beta * max_dist));
      if (rng.uniform01() < p) edges.emplace_back(u, v);
    }
  return edges;
}

// Small random core, remaining nodes attached as stub clusters.
std::vector<Edge> sample_hier2(const GenSpec& spec, Rng& rng) {
  const uint32_t n = spec.node_count;
  const uint32_t core = std::max<uint32_t>(3, n / 10);
  std::set<Edge> edges;

  // Dense-ish core.
  for (NodeId u = 0; u < core; ++u)
    for (NodeId v = u + 1; v < core; ++v)
      if (rng.uniform01() < 0.5) edges.insert({u, v});
  // Ring fallback keeps the core connected even on unlucky draws.
  for (NodeId u = 0; u < core; ++u)
    edges.insert(Edge{std::min<NodeId>(u, (u + 1) % core),
                      std::max<NodeId>(u, (u + 1) % core)});

  // Stubs: each outer node hangs off a core node plus a few local links.
  for (NodeId u = core; u < n; ++u) {
    const NodeId anchor =
        static_cast<NodeId>(rng.uniform_int(0, static_cast<int64_t>(core) - 1));
    edges.insert(Edge{std::min(u, anchor), std::max(u, anchor)});
    if (u > core && rng.uniform01() < 0.4) {
      const NodeId peer = static_cast<NodeId>(
          rng.uniform_int(static_cast<int64_t>(core), static_cast<int64_t>(u) - 1));
      edges.insert(Edge{std::min(u, peer), std::max(u, peer)});
    }
  }

  // Top up toward the target with uniform extra links.
  if (spec.target_arc_count > 0) {
    const uint64_t want = (spec.target_arc_count + 1) / 2;
    uint64_t guard = 0;
    while (edges.size() < want && guard++ < 20u * want) {
      const NodeId u =
          static_cast<NodeId>(rng.uniform_int(0, static_cast<int64_t>(n) - 1));
      const NodeId v =
          static_cast<NodeId>(rng.uniform_int(0, static_cast<int64_t>(n) - 1));
      if (u == v) continue;
      edges.insert(Edge{std::min(u, v), std::max(u, v)});
    }
  }
  return {edges.begin(), edges.end()};
}

struct UnionFind {
  std::vector<NodeId> parent;
  explicit UnionFind(uint32_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  NodeId find(NodeId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(NodeId a, NodeId b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace

std::vector<Edge> sample_edges(const GenSpec& spec, Rng& rng) {
  validate_spec(spec);
  switch (spec.family) {
    case GraphFamily::kRandom: return sample_random(spec, rng);
    case GraphFamily::kWaxman: return sample_waxman(spec, rng);
    case GraphFamily::kHier2: return sample_hier2(spec, rng);
  }
  return {};
}

Topology gen_topology(const GenSpec& spec) {
  validate_spec(spec);
  constexpr int kMaxAttempts = 8;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Rng rng(mix_seed(spec.seed, 0x746f706fULL, static_cast<uint64_t>(attempt)));
    std::vector<Edge> edges = sample_edges(spec, rng);

    UnionFind uf(spec.node_count);
    uint32_t components = spec.node_count;
    for (const Edge& e : edges)
      if (uf.unite(e.first, e.second)) --components;

    // A graph that is mostly crumbs is not worth repairing; resample.
    std::vector<uint32_t> comp_size(spec.node_count, 0);
    for (NodeId u = 0; u < spec.node_count; ++u) ++comp_size[uf.find(u)];
    const uint32_t giant = *std::max_element(comp_size.begin(), comp_size.end());
    if (giant * 2 < spec.node_count) continue;

    // Join remaining components with uniformly chosen cross links.
    std::set<Edge> edge_set(edges.begin(), edges.end());
    while (components > 1) {
      const NodeId u = static_cast<NodeId>(
          rng.uniform_int(0, static_cast<int64_t>(spec.node_count) - 1));
      const NodeId v = static_cast<NodeId>(
          rng.uniform_int(0, static_cast<int64_t>(spec.node_count) - 1));
      if (u == v || uf.find(u) == uf.find(v)) continue;
      edge_set.insert(Edge{std::min(u, v), std::max(u, v)});
      uf.unite(u, v);
      --components;
    }

    std::vector<Arc> arcs;
    arcs.reserve(edge_set.size() * 2);
    for (const Edge& e : edge_set) {
      const double cap = spec.capacity_levels[static_cast<size_t>(
          rng.uniform_int(0, static_cast<int64_t>(spec.capacity_levels.size()) - 1))];
      arcs.push_back({e.first, e.second, cap});
      arcs.push_back({e.second, e.first, cap});
    }
    return Topology(spec.node_count, std::move(arcs));
  }
  fail(ErrorCode::kUnconnectable,
       "could not reach a connected topology after " +
           std::to_string(kMaxAttempts) + " attempts; parameters too sparse");
}

DemandMatrix gen_demands(const Topology& topo, const DemandSpec& spec) {
  if (spec.density < 0.0 || spec.density > 1.0)
    fail(ErrorCode::kBadParams, "density must be in [0, 1]");
  if (!(spec.scale_base > 0.0))
    fail(ErrorCode::kBadParams, "scale_base must be positive");
  if (!(spec.magnitude > 0.0))
    fail(ErrorCode::kBadParams, "magnitude must be positive");
  if (spec.scale_index < 0)
    fail(ErrorCode::kBadParams, "scale_index must be >= 0");

  const uint32_t n = topo.node_count();
  std::vector<std::pair<NodeId, NodeId>> pairs;
  pairs.reserve(static_cast<size_t>(n) * (n - 1));
  for (NodeId s = 0; s < n; ++s)
    for (NodeId t = 0; t < n; ++t)
      if (s != t) pairs.emplace_back(s, t);

  const auto want = static_cast<size_t>(
      std::llround(spec.density * static_cast<double>(pairs.size())));

  Rng rng(mix_seed(spec.base_seed, 0x64656d64ULL));
  for (size_t i = 0; i < want; ++i) {
    const size_t j = static_cast<size_t>(
        rng.uniform_int(static_cast<int64_t>(i),
                        static_cast<int64_t>(pairs.size()) - 1));
    std::swap(pairs[i], pairs[j]);
  }
  pairs.resize(want);
  std::sort(pairs.begin(), pairs.end());

  std::vector<DemandMatrix::Entry> entries;
  entries.reserve(want);
  for (const auto& [s, t] : pairs) {
    double value = spec.magnitude * rng.uniform_real(0.1, 1.0);
    // One multiplication per scale step keeps the k -> k+1 ratio exact.
    for (int k = 0; k < spec.scale_index; ++k) value *= spec.scale_base;
    entries.push_back({s, t, value});
  }
  return DemandMatrix(n, std::move(entries));
}

GenSpec preset_spec(std::string_view name, uint64_t seed) {
  GenSpec spec;
  spec.seed = seed;
  if (name == "h50") {
    spec.family = GraphFamily::kHier2;
    spec.node_count = 50;
    spec.target_arc_count = 148;
  } else if (name == "h100") {
    spec.family = GraphFamily::kHier2;
    spec.node_count = 100;
    spec.target_arc_count = 360;
  } else if (name == "r50") {
    spec.family = GraphFamily::kRandom;
    spec.node_count = 50;
    spec.target_arc_count = 228;
  } else if (name == "r100") {
    spec.family = GraphFamily::kRandom;
    spec.node_count = 100;
    spec.target_arc_count = 503;
  } else if (name == "w50") {
    spec.family = GraphFamily::kWaxman;
    spec.node_count = 50;
    spec.target_arc_count = 169;
  } else if (name == "w100") {
    spec.family = GraphFamily::kWaxman;
    spec.node_count = 100;
    spec.target_arc_count = 476;
  } else {
    fail(ErrorCode::kConfigError, "unknown preset '" + std::string(name) + "'");
  }
  return spec;
}

}  // namespace ospfw
