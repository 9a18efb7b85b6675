#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ospfw/net.hpp"

namespace ospfw {

struct TabuParams {
  int max_iterations = 1000;
  int stall_limit = 300;       // stop after this many non-improving iterations
  int tenure = 0;              // 0 = round(sqrt(arc count)), min 1
  int neighborhood_samples = 10;
  uint64_t seed = 1;
};

struct TraceEntry {
  int iteration = 0;           // 1-based
  double candidate_cost = 0.0; // cost of the solution after this iteration
  double best_cost = 0.0;      // best seen so far
  int32_t moved_arc = -1;      // -1 when no admissible candidate existed
};

struct SearchTrace {
  double initial_cost = 0.0;
  std::vector<TraceEntry> entries;
};

// Pure cost function over weight vectors; lower is better. May throw
// ospfw::Error; failing candidates are discarded.
using Evaluator = std::function<double(const WeightVector&)>;

struct SearchResult {
  WeightVector best;
  double best_cost = 0.0;
  SearchTrace trace;
};

// Classic tabu search over single-arc weight reassignments. The changed
// arc index becomes tabu for `tenure` iterations; a tabu move is admitted
// only if it beats the global best (aspiration). The best admissible
// candidate is accepted even when worsening. Deterministic in
// (evaluator, initial, params).
SearchResult tabu_search(const Evaluator& evaluate, WeightVector initial,
                         const TabuParams& params);

// One weight per arc, independently uniform on [1, w_max].
WeightVector random_initial(const Topology& topo, int w_max, uint64_t seed);

int effective_tenure(const TabuParams& params, uint32_t arc_count);

}  // namespace ospfw
