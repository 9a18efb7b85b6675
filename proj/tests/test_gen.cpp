#include "ospfw/gen.hpp"

#include "doctest.h"
#include "ospfw/rng.hpp"
#include "test_helpers.hpp"

using namespace ospfw;

namespace {

DemandMatrix full_demand(const Topology& topo) {
  std::vector<DemandMatrix::Entry> entries;
  for (NodeId s = 0; s < topo.node_count(); ++s)
    for (NodeId t = 0; t < topo.node_count(); ++t)
      if (s != t) entries.push_back({s, t, 1.0});
  return DemandMatrix(topo.node_count(), std::move(entries));
}

}  // namespace

TEST_CASE("generation is deterministic in the spec") {
  for (GraphFamily family :
       {GraphFamily::kRandom, GraphFamily::kWaxman, GraphFamily::kHier2}) {
    GenSpec spec;
    spec.family = family;
    spec.node_count = 30;
    spec.target_arc_count = 90;
    spec.seed = 17;
    const Topology a = gen_topology(spec);
    const Topology b = gen_topology(spec);
    CHECK(a == b);
  }
}

TEST_CASE("generated topologies are strongly connected") {
  Rng rng(12);
  for (GraphFamily family :
       {GraphFamily::kRandom, GraphFamily::kWaxman, GraphFamily::kHier2}) {
    for (int i = 0; i < 5; ++i) {
      GenSpec spec;
      spec.family = family;
      spec.node_count = 40;
      spec.target_arc_count = 120;
      spec.seed = rng.next();
      const Topology t = gen_topology(spec);
      CHECK(check_connectivity(t, full_demand(t)).empty());
    }
  }
}

TEST_CASE("vanishing Waxman alpha cannot connect") {
  GenSpec spec;
  spec.family = GraphFamily::kWaxman;
  spec.node_count = 30;
  spec.waxman_alpha = 1e-300;
  spec.seed = 4;
  CHECK(ospfw::testing::thrown_code([&] { gen_topology(spec); }) ==
        ErrorCode::kUnconnectable);
}

TEST_CASE("raw random edge counts follow the binomial mean") {
  GenSpec spec;
  spec.node_count = 50;
  spec.edge_probability = 0.1;
  double total = 0.0;
  for (int i = 0; i < 100; ++i) {
    Rng rng(mix_seed(1000, static_cast<uint64_t>(i)));
    total += static_cast<double>(sample_edges(spec, rng).size());
  }
  const double mean = total / 100.0;
  // E = C(50,2) * 0.1 = 122.5, sigma of the mean ~= 1.05; allow 4 sigma.
  CHECK(mean > 122.5 - 4.2);
  CHECK(mean < 122.5 + 4.2);
}

TEST_CASE("random family with a target hits the arc count exactly when connected") {
  GenSpec spec;
  spec.node_count = 50;
  spec.target_arc_count = 228;
  spec.seed = 9;
  const Topology t = gen_topology(spec);
  CHECK(t.node_count() == 50);
  // Augmentation can only add links.
  CHECK(t.arc_count() >= 228);
  CHECK(t.arc_count() <= 236);
}

TEST_CASE("demand ladder scales by exactly one multiplication per step") {
  const Topology t = gen_topology(preset_spec("r50", 3));
  DemandSpec base;
  base.base_seed = 11;
  base.density = 0.2;
  for (int k = 0; k < 4; ++k) {
    DemandSpec lo = base;
    lo.scale_index = k;
    DemandSpec hi = base;
    hi.scale_index = k + 1;
    const DemandMatrix a = gen_demands(t, lo);
    const DemandMatrix b = gen_demands(t, hi);
    REQUIRE(a.entries().size() == b.entries().size());
    for (size_t i = 0; i < a.entries().size(); ++i) {
      CHECK(a.entries()[i].src == b.entries()[i].src);
      CHECK(a.entries()[i].dst == b.entries()[i].dst);
      CHECK(b.entries()[i].value == a.entries()[i].value * base.scale_base);
    }
  }
}

TEST_CASE("demand density controls the pair count") {
  const Topology t = ospfw::testing::ring(10, 100);
  DemandSpec all;
  all.density = 1.0;
  CHECK(gen_demands(t, all).entries().size() == 90);
  DemandSpec none;
  none.density = 0.0;
  CHECK(gen_demands(t, none).entries().empty());
}

TEST_CASE("demands are deterministic and scale-subset stable") {
  const Topology t = gen_topology(preset_spec("w50", 5));
  DemandSpec spec;
  spec.base_seed = 21;
  spec.density = 0.4;
  const DemandMatrix a = gen_demands(t, spec);
  const DemandMatrix b = gen_demands(t, spec);
  CHECK(a == b);
  spec.scale_index = 3;
  const DemandMatrix c = gen_demands(t, spec);
  REQUIRE(a.entries().size() == c.entries().size());
  for (size_t i = 0; i < a.entries().size(); ++i)
    CHECK(a.entries()[i].src == c.entries()[i].src);
}

TEST_CASE("presets give the documented shapes") {
  CHECK(preset_spec("h50", 1).node_count == 50);
  CHECK(preset_spec("h100", 1).target_arc_count == 360);
  CHECK(preset_spec("r100", 1).family == GraphFamily::kRandom);
  CHECK(preset_spec("w100", 1).node_count == 100);
  CHECK(ospfw::testing::thrown_code([] { preset_spec("x99", 1); }) ==
        ErrorCode::kConfigError);
}
