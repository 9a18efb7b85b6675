#include "ospfw/oracle.hpp"

#include "doctest.h"
#include "ospfw/cost.hpp"
#include "test_helpers.hpp"

using namespace ospfw;
using ospfw::testing::chain;
using ospfw::testing::demands;
using ospfw::testing::unit_weights;

TEST_CASE("brute force on a single arc: all vectors tie, lex-smallest wins") {
  const Topology t = ospfw::testing::make_topology(2, {{0, 1, 10}});
  const DemandMatrix dm = demands(t, {{0, 1, 2}});  // utilization 0.2
  const OracleResult r = brute_force_single(t, dm, 3);
  CHECK(r.evaluated_count == 3);
  CHECK(r.best_weights.values == std::vector<int>{1});
  CHECK(r.best_cost == doctest::Approx(1.0));
}

TEST_CASE("brute force enumerates the full tie-triangle space") {
  // Arcs (0,1), (0,2), (1,2): 2^3 = 8 vectors.
  const Topology t = ospfw::testing::make_topology(
      3, {{0, 1, 10}, {0, 2, 10}, {1, 2, 10}});
  const DemandMatrix dm = demands(t, {{0, 2, 12}});
  const OracleResult r = brute_force_single(t, dm, 2);
  CHECK(r.evaluated_count == 8);

  // Cross-check against direct evaluation of all 8 vectors.
  double expect = 0.0;
  bool first = true;
  WeightVector w{{1, 1, 1}, 2};
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 2; ++b)
      for (int c = 1; c <= 2; ++c) {
        w.values = {a, b, c};
        const double cost = evaluate(t, w, dm).normalized;
        if (first || cost < expect) {
          first = false;
          expect = cost;
        }
      }
  CHECK(r.best_cost == expect);
}

TEST_CASE("enumeration ceiling guards runtime") {
  std::vector<Arc> arcs;
  for (uint32_t i = 0; i < 10; ++i) arcs.push_back({i, i + 1, 10});
  const Topology t(11, std::move(arcs));
  const DemandMatrix dm = demands(t, {{0, 10, 1}});
  CHECK(ospfw::testing::thrown_code([&] {
          brute_force_single(t, dm, 20);
        }) == ErrorCode::kTooLarge);
}

TEST_CASE("paired brute force on a flat landscape returns the constant") {
  // Directed cycle base: every pair has exactly one route in t_fail.
  std::vector<Arc> arcs;
  const uint32_t n = 44;
  for (uint32_t i = 0; i < n; ++i) arcs.push_back({i, (i + 1) % n, 100});
  const Topology base(n, std::move(arcs));
  const DemandMatrix dm =
      DemandMatrix(n, {{0, 22, 10}, {22, 0, 10}});
  const FailureScenario sc = build_scenario(base, dm);
  // Enumeration over 46 arcs is far beyond the ceiling, so restrict to
  // w_max = 1: a single vector, still a valid constant-landscape probe.
  const OracleResult r = brute_force_paired(sc, 1);
  CHECK(r.evaluated_count == 1);
  const PairedEvaluation pe = evaluate_pair(sc, r.best_weights);
  CHECK(r.best_cost == pe.averaged_cost);
}

TEST_CASE("pair flow enumeration matches hand examples") {
  const Topology c = chain(3, 10);
  const auto chain_loads = enumerate_pair_flows(c, unit_weights(c), 0, 2, 6);
  CHECK(chain_loads == std::vector<double>{6, 6});

  const Topology d = ospfw::testing::make_topology(
      4, {{0, 1, 10}, {0, 2, 10}, {1, 3, 10}, {2, 3, 10}});
  const auto diamond_loads = enumerate_pair_flows(d, unit_weights(d), 0, 3, 8);
  CHECK(diamond_loads == std::vector<double>{4, 4, 4, 4});
}

TEST_CASE("pair flow enumeration guards") {
  const Topology c = chain(3, 10);
  CHECK(ospfw::testing::thrown_code([&] {
          enumerate_pair_flows(c, unit_weights(c), 2, 0, 1);
        }) == ErrorCode::kUnroutableDemand);

  const Topology big = chain(13, 10);
  CHECK(ospfw::testing::thrown_code([&] {
          enumerate_pair_flows(big, unit_weights(big), 0, 12, 1);
        }) == ErrorCode::kTooLarge);
}

TEST_CASE("zero demand enumerates to zero loads") {
  const Topology c = chain(3, 10);
  CHECK(enumerate_pair_flows(c, unit_weights(c), 0, 2, 0) ==
        std::vector<double>{0, 0});
}
