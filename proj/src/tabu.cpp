#include "ospfw/tabu.hpp"

#include <cmath>

#include "ospfw/rng.hpp"

namespace ospfw {

namespace {

void validate_params(const TabuParams& p) {
  if (p.max_iterations < 0)
    fail(ErrorCode::kBadParams, "max_iterations must be >= 0");
  if (p.stall_limit < 1) fail(ErrorCode::kBadParams, "stall_limit must be >= 1");
  if (p.tenure < 0) fail(ErrorCode::kBadParams, "tenure must be >= 0");
  if (p.max_iterations > 0 && p.tenure >= p.max_iterations)
    fail(ErrorCode::kBadParams, "tenure must be < max_iterations");
  if (p.neighborhood_samples < 1)
    fail(ErrorCode::kBadParams, "neighborhood_samples must be >= 1");
}

}  // namespace

int effective_tenure(const TabuParams& params, uint32_t arc_count) {
  if (params.tenure > 0) return params.tenure;
  const int t = static_cast<int>(std::lround(std::sqrt(arc_count)));
  return t < 1 ? 1 : t;
}

WeightVector random_initial(const Topology& topo, int w_max, uint64_t seed) {
  if (w_max < 1) fail(ErrorCode::kBadParams, "w_max must be >= 1");
  Rng rng(seed);
  std::vector<int> values(topo.arc_count());
  for (size_t i = 0; i < values.size(); ++i)
    values[i] = static_cast<int>(rng.uniform_int(1, w_max));
  return WeightVector{std::move(values), w_max};
}

SearchResult tabu_search(const Evaluator& evaluate, WeightVector initial,
                         const TabuParams& params) {
  validate_params(params);
  const size_t arc_count = initial.values.size();
  const int tenure = effective_tenure(params, static_cast<uint32_t>(arc_count));

  double current_cost;
  try {
    current_cost = evaluate(initial);
  } catch (const Error& e) {
    fail(e.code(), std::string(e.what()) +
                       " (initial weights: " + serialize_weights(initial) + ")");
  }

  SearchResult result;
  result.best = initial;
  result.best_cost = current_cost;
  result.trace.initial_cost = current_cost;
  if (params.max_iterations == 0 || arc_count == 0) return result;

  WeightVector current = std::move(initial);
  Rng rng(params.seed);
  std::vector<int> tabu_until(arc_count, 0);
  int stall = 0;

  for (int it = 1; it <= params.max_iterations; ++it) {
    bool have_candidate = false;
    double cand_cost = 0.0;
    uint32_t cand_arc = 0;
    int cand_weight = 0;

    for (int s = 0; s < params.neighborhood_samples; ++s) {
      const uint32_t arc =
          static_cast<uint32_t>(rng.uniform_int(0, static_cast<int64_t>(arc_count) - 1));
      if (current.w_max < 2) continue;  // no alternative value exists
      int w = static_cast<int>(rng.uniform_int(1, current.w_max - 1));
      if (w >= current.values[arc]) ++w;  // uniform over values != old

      const int old = current.values[arc];
      current.values[arc] = w;
      double cost;
      bool ok = true;
      try {
        cost = evaluate(current);
      } catch (const Error&) {
        ok = false;  // discard candidates the evaluator rejects
        cost = 0.0;
      }
      current.values[arc] = old;
      if (!ok) continue;

      const bool tabu = it <= tabu_until[arc];
      if (tabu && !(cost < result.best_cost)) continue;  // aspiration only

      if (!have_candidate || cost < cand_cost ||
          (cost == cand_cost &&
           (arc < cand_arc || (arc == cand_arc && w < cand_weight)))) {
        have_candidate = true;
        cand_cost = cost;
        cand_arc = arc;
        cand_weight = w;
      }
    }

    int32_t moved = -1;
    if (have_candidate) {
      current.values[cand_arc] = cand_weight;
      current_cost = cand_cost;
      tabu_until[cand_arc] = it + tenure;
      moved = static_cast<int32_t>(cand_arc);
      if (cand_cost < result.best_cost) {
        result.best = current;
        result.best_cost = cand_cost;
        stall = 0;
      } else {
        ++stall;
      }
    } else {
      ++stall;
    }
    result.trace.entries.push_back(
        TraceEntry{it, current_cost, result.best_cost, moved});
    if (stall >= params.stall_limit) break;
  }
  return result;
}

}  // namespace ospfw
