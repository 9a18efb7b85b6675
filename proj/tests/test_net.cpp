#include "ospfw/net.hpp"

#include <algorithm>

#include "doctest.h"
#include "ospfw/cost.hpp"
#include "ospfw/gen.hpp"
#include "ospfw/rng.hpp"
#include "ospfw/routing.hpp"
#include "ospfw/tabu.hpp"
#include "test_helpers.hpp"

using namespace ospfw;
using ospfw::testing::thrown_code;

TEST_CASE("parse_topology handles the basic forms") {
  const Topology t = parse_topology("nodes 3\narc 0 1 100\narc 1 0 100");
  CHECK(t.node_count() == 3);
  CHECK(t.arc_count() == 2);
  CHECK(t.arc(0).src == 0);
  CHECK(t.arc(0).dst == 1);
  CHECK(t.arc(0).capacity == 100.0);

  const Topology empty = parse_topology("nodes 2");
  CHECK(empty.node_count() == 2);
  CHECK(empty.arc_count() == 0);
}

TEST_CASE("parse_topology rejects malformed input") {
  CHECK(thrown_code([] { parse_topology("nodes 3\narc 0 5 100"); }) ==
        ErrorCode::kNodeOutOfRange);
  CHECK(thrown_code([] { parse_topology(""); }) == ErrorCode::kMalformedInput);
  CHECK(thrown_code([] { parse_topology("arc 0 1 5"); }) ==
        ErrorCode::kMalformedInput);
  CHECK(thrown_code([] { parse_topology("nodes 3\narc 0 1 0"); }) ==
        ErrorCode::kNonPositiveCapacity);
  CHECK(thrown_code([] { parse_topology("nodes 3\narc 0 1 5\narc 0 1 7"); }) ==
        ErrorCode::kDuplicateArc);
  CHECK(thrown_code([] { parse_topology("nodes 3\narc 1 1 5"); }) ==
        ErrorCode::kSelfLoop);
  CHECK(thrown_code([] { parse_topology("nodes 3\narc 0 1 5 9"); }) ==
        ErrorCode::kMalformedInput);
}

TEST_CASE("topology comments and whitespace are ignored") {
  const Topology t = parse_topology(
      "# generated\n  nodes 4  # four routers\n\narc 0 1 10 # uplink\n");
  CHECK(t.node_count() == 4);
  CHECK(t.arc_count() == 1);
}

TEST_CASE("parse_demands basic forms and errors") {
  const Topology t = parse_topology("nodes 3\narc 0 1 10\narc 1 2 10");
  const DemandMatrix dm = parse_demands("demand 0 2 7.5", t);
  CHECK(dm.at(0, 2) == 7.5);
  CHECK(dm.at(2, 0) == 0.0);
  CHECK(dm.entries().size() == 1);

  CHECK(parse_demands("", t).entries().empty());
  CHECK(thrown_code([&] { parse_demands("demand 1 1 3", t); }) ==
        ErrorCode::kSelfDemand);
  CHECK(thrown_code([&] { parse_demands("demand 0 9 3", t); }) ==
        ErrorCode::kNodeOutOfRange);
  CHECK(thrown_code([&] { parse_demands("demand 0 1 -3", t); }) ==
        ErrorCode::kNegativeDemand);
  CHECK(thrown_code([&] {
          parse_demands("demand 0 1 3\ndemand 0 1 4", t);
        }) == ErrorCode::kMalformedInput);
}

TEST_CASE("fail_link removes both directions and nothing else") {
  const Topology t = ospfw::testing::make_topology(
      4, {{1, 2, 10}, {2, 1, 10}, {1, 3, 10}});
  const FailLinkResult r = fail_link(t, LinkId::of(1, 2));
  REQUIRE(r.topology.arc_count() == 1);
  CHECK(r.topology.arc(0).src == 1);
  CHECK(r.topology.arc(0).dst == 3);
  CHECK(r.arc_remap == std::vector<int32_t>{-1, -1, 0});

  CHECK(thrown_code([&] { fail_link(t, LinkId::of(0, 3)); }) ==
        ErrorCode::kUnknownLink);
  CHECK(thrown_code([&] { fail_link(r.topology, LinkId::of(1, 2)); }) ==
        ErrorCode::kUnknownLink);
}

TEST_CASE("add_link appends an opposite arc pair") {
  // Path 0 - 1 - 2 with both directions present.
  const Topology t = ospfw::testing::make_topology(
      3, {{0, 1, 100}, {1, 0, 100}, {1, 2, 100}, {2, 1, 100}});
  const AddLinkResult r = add_link(t, 0, 2, 100);
  CHECK(r.first_added_arc == 4);
  REQUIRE(r.topology.arc_count() == 6);
  CHECK(r.topology.arc(4) == Arc{0, 2, 100});
  CHECK(r.topology.arc(5) == Arc{2, 0, 100});

  CHECK(thrown_code([&] { add_link(t, 0, 1, 50); }) ==
        ErrorCode::kDuplicateArc);
  CHECK(thrown_code([&] { add_link(t, 1, 1, 50); }) == ErrorCode::kSelfLoop);
}

TEST_CASE("check_connectivity reports exactly the unroutable demands") {
  const Topology t = ospfw::testing::chain(3, 10);
  const DemandMatrix forward = ospfw::testing::demands(t, {{0, 2, 5}});
  CHECK(check_connectivity(t, forward).empty());

  const DemandMatrix backward = ospfw::testing::demands(t, {{2, 0, 5}});
  const auto bad = check_connectivity(t, backward);
  REQUIRE(bad.size() == 1);
  CHECK(bad[0] == std::pair<NodeId, NodeId>{2, 0});

  const DemandMatrix none = ospfw::testing::demands(t, {});
  CHECK(check_connectivity(t, none).empty());
}

TEST_CASE("topology serialization round-trips exactly") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    GenSpec spec;
    spec.node_count = 4 + static_cast<uint32_t>(rng.uniform_int(0, 8));
    spec.edge_probability = 0.5;
    spec.capacity_levels = {100, 250.75, 1000.125, 39.0625};
    spec.seed = rng.next();
    const Topology t = gen_topology(spec);
    const std::string text = serialize_topology(t);
    const Topology back = parse_topology(text);
    CHECK(back == t);
    CHECK(serialize_topology(back) == text);
  }
}

TEST_CASE("demand serialization round-trips") {
  const Topology t = ospfw::testing::ring(5, 10);
  DemandSpec ds;
  ds.base_seed = 3;
  ds.density = 0.5;
  const DemandMatrix dm = gen_demands(t, ds);
  const DemandMatrix back = parse_demands(serialize_demands(dm), t);
  CHECK(serialize_demands(back) == serialize_demands(dm));
}

TEST_CASE("weight file round-trip and validation") {
  const Topology t = ospfw::testing::ring(4, 10);
  const WeightVector w = random_initial(t, 20, 99);
  const WeightVector back = parse_weights(serialize_weights(w), t, 20);
  CHECK(back.values == w.values);

  CHECK(thrown_code([&] { parse_weights("weight 0 3", t, 20); }) ==
        ErrorCode::kBadWeight);  // arcs 1.. missing
  CHECK(thrown_code([&] { parse_weights(serialize_weights(w) + "weight 0 1",
                                        t, 20); }) ==
        ErrorCode::kMalformedInput);  // duplicate
  CHECK(thrown_code([&] { parse_weights("weight 0 40", t, 20); }) ==
        ErrorCode::kBadWeight);
}

TEST_CASE("fail then add restores routing behaviour") {
  Rng rng(1234);
  GenSpec spec;
  spec.node_count = 8;
  spec.edge_probability = 0.45;
  spec.seed = 5;
  const Topology original = gen_topology(spec);
  DemandSpec ds;
  ds.base_seed = 11;
  ds.density = 0.4;
  const DemandMatrix dm = gen_demands(original, ds);

  // Pick a link, fail it, re-add with the original capacity.
  const Arc& probe = original.arc(0);
  const LinkId link = LinkId::of(probe.src, probe.dst);
  const FailLinkResult failed = fail_link(original, link);
  const AddLinkResult restored =
      add_link(failed.topology, link.lo, link.hi, probe.capacity);
  const Topology& r = restored.topology;

  CHECK(r.arc_count() == original.arc_count());
  CHECK(restored.topology.node_count() == original.node_count());

  // Same weights modulo the reindexing must give identical costs.
  for (int trial = 0; trial < 50; ++trial) {
    const WeightVector w_orig = random_initial(original, 20, rng.next());
    WeightVector w_restored{std::vector<int>(r.arc_count(), 0), 20};
    for (uint32_t a = 0; a < r.arc_count(); ++a) {
      const Arc& arc = r.arc(a);
      const int32_t orig_idx = original.find_arc(arc.src, arc.dst);
      REQUIRE(orig_idx >= 0);
      w_restored.values[a] = w_orig.values[static_cast<uint32_t>(orig_idx)];
    }
    const CostReport c1 = evaluate(original, w_orig, dm);
    const CostReport c2 = evaluate(r, w_restored, dm);
    CHECK(c1.total == doctest::Approx(c2.total).epsilon(1e-12));
    CHECK(c1.normalized == doctest::Approx(c2.normalized).epsilon(1e-12));
  }
}

TEST_CASE("surgery arc-count arithmetic") {
  const Topology t = ospfw::testing::ring(6, 10);
  const AddLinkResult added = add_link(t, 0, 3, 10);
  CHECK(added.topology.arc_count() == t.arc_count() + 2);
  const FailLinkResult failed = fail_link(added.topology, LinkId::of(0, 3));
  CHECK(failed.topology.arc_count() == t.arc_count());
  const FailLinkResult failed2 = fail_link(t, LinkId::of(0, 1));
  CHECK(failed2.topology.arc_count() == t.arc_count() - 2);
}
