#include "ospfw/cost.hpp"

#include <cmath>

#include "doctest.h"
#include "ospfw/gen.hpp"
#include "ospfw/rng.hpp"
#include "ospfw/tabu.hpp"
#include "test_helpers.hpp"

using namespace ospfw;
using ospfw::testing::chain;
using ospfw::testing::demands;
using ospfw::testing::unit_weights;

namespace {

// Independent route: total slope mass overlapping [0, load], band by band.
double arc_cost_by_band_overlap(double load, double capacity) {
  double value = 0.0;
  double lo = 0.0;
  for (int band = 0; band < 5; ++band) {
    const double hi = capacity * kUtilBreaks[band];
    value += kBandSlopes[band] * std::max(0.0, std::min(load, hi) - lo);
    lo = hi;
  }
  value += kBandSlopes[5] * std::max(0.0, load - lo);
  return value;
}

// Adaptive Simpson quadrature of the slope schedule; tolerates the jump
// discontinuities by splitting until the local estimate stabilizes.
double slope_at(double u) {
  int band = 0;
  while (band < 5 && u >= kUtilBreaks[band]) ++band;
  return kBandSlopes[band];
}

double simpson(double a, double b) {
  const double m = 0.5 * (a + b);
  return (b - a) / 6.0 * (slope_at(a) + 4.0 * slope_at(m) + slope_at(b));
}

double integrate_slope(double a, double b, double whole, int depth) {
  const double m = 0.5 * (a + b);
  const double left = simpson(a, m);
  const double right = simpson(m, b);
  if (depth <= 0 || std::abs(left + right - whole) < 1e-12)
    return left + right;
  return integrate_slope(a, m, left, depth - 1) +
         integrate_slope(m, b, right, depth - 1);
}

double arc_cost_by_quadrature(double load, double capacity) {
  if (load == 0.0) return 0.0;
  // Integrate the utilization-domain slope, then rescale to load units.
  const double u_top = load / capacity;
  return capacity * integrate_slope(0.0, u_top, simpson(0.0, u_top), 60);
}

}  // namespace

TEST_CASE("arc_cost matches the derived closed-form values") {
  CHECK(arc_cost(0.0, 1.0) == 0.0);
  CHECK(arc_cost(2.0 / 3.0, 1.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(arc_cost(1.1, 1.0) == doctest::Approx(182.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("arc_cost agrees with the band-overlap and quadrature oracles") {
  Rng rng(42);
  for (int i = 0; i < 200; ++i) {
    const double cap = rng.uniform_real(0.5, 1000.0);
    const double load = rng.uniform_real(0.0, 1.5) * cap;
    const double got = arc_cost(load, cap);
    CHECK(got == doctest::Approx(arc_cost_by_band_overlap(load, cap))
                     .epsilon(1e-12));
    CHECK(got ==
          doctest::Approx(arc_cost_by_quadrature(load, cap)).epsilon(1e-9));
  }
  // The spec'd anchor points, against quadrature.
  CHECK(arc_cost(2.0 / 3.0, 1.0) ==
        doctest::Approx(arc_cost_by_quadrature(2.0 / 3.0, 1.0)).epsilon(1e-9));
  CHECK(arc_cost(1.1, 1.0) ==
        doctest::Approx(arc_cost_by_quadrature(1.1, 1.0)).epsilon(1e-9));
}

TEST_CASE("arc_cost is continuous at every band boundary") {
  // One-sided limits: extrapolate each band's line to the breakpoint.
  for (int b = 0; b < 5; ++b) {
    const double brk = kUtilBreaks[b];
    const double below = std::nextafter(brk, 0.0);
    const double above = std::nextafter(brk, 2.0);
    const double left = arc_cost(below, 1.0) + kBandSlopes[b] * (brk - below);
    const double right =
        arc_cost(above, 1.0) - kBandSlopes[b + 1] * (above - brk);
    CHECK(std::abs(left - right) <= 1e-12);
  }
}

TEST_CASE("arc_cost is convex and strictly increasing") {
  Rng rng(17);
  for (int i = 0; i < 2000; ++i) {
    double l1 = rng.uniform_real(0.0, 1.4);
    double l2 = rng.uniform_real(0.0, 1.4);
    if (l1 > l2) std::swap(l1, l2);
    if (l1 == l2) continue;
    const double mid = 0.5 * (l1 + l2);
    CHECK(arc_cost(mid, 1.0) <=
          0.5 * (arc_cost(l1, 1.0) + arc_cost(l2, 1.0)) + 1e-12);
    if (l2 > 0.0) CHECK(arc_cost(l2, 1.0) > arc_cost(l1, 1.0));
  }
}

TEST_CASE("step cost model returns the literal band constants") {
  CHECK(arc_cost(0.0, 1.0, CostKind::kStep) == 1.0);
  CHECK(arc_cost(0.5, 1.0, CostKind::kStep) == 3.0);
  CHECK(arc_cost(0.95, 1.0, CostKind::kStep) == 70.0);
  CHECK(arc_cost(2.0, 1.0, CostKind::kStep) == 5000.0);
}

TEST_CASE("network_cost sums per-arc costs in arc order") {
  const Topology t = chain(3, 1.0);
  const DemandMatrix dm = demands(t, {{0, 2, 2.0 / 3.0}});
  const FlowSolution fs = total_loads(t, unit_weights(t), dm);
  const CostReport report = network_cost(fs, t);
  REQUIRE(report.per_arc.size() == 2);
  CHECK(report.per_arc[0] == doctest::Approx(4.0 / 3.0));
  CHECK(report.total == report.per_arc[0] + report.per_arc[1]);
  CHECK(report.max_utilization == doctest::Approx(2.0 / 3.0));

  double resum = 0.0;
  for (uint32_t a = 0; a < t.arc_count(); ++a)
    resum += arc_cost(fs.total[a], t.arc(a).capacity);
  CHECK(report.total == resum);
}

TEST_CASE("zero-load network costs nothing") {
  const Topology t = chain(2, 5);
  const FlowSolution fs = total_loads(t, unit_weights(t),
                                      demands(t, {}));
  CHECK(network_cost(fs, t).total == 0.0);
}

TEST_CASE("uncap_cost counts demand times min hops") {
  const Topology t = chain(3, 100);
  CHECK(uncap_cost(t, demands(t, {{0, 2, 7}})) == 14.0);
  CHECK(uncap_cost(t, demands(t, {})) == 0.0);

  // Triangle with a direct arc: one hop is available.
  const Topology tri = ospfw::testing::make_topology(
      3, {{0, 1, 10}, {0, 2, 10}, {1, 2, 10}});
  CHECK(uncap_cost(tri, demands(tri, {{0, 2, 10}})) == 10.0);
}

TEST_CASE("normalized_cost basics") {
  CHECK(normalized_cost(14.0, 14.0) == 1.0);
  CHECK(ospfw::testing::thrown_code([] { normalized_cost(1.0, 0.0); }) ==
        ErrorCode::kZeroUncap);

  // Low-utilization chain attains the floor exactly.
  const Topology t = chain(3, 100);
  const DemandMatrix dm = demands(t, {{0, 2, 7}});
  const CostReport report = evaluate(t, unit_weights(t), dm);
  CHECK(report.normalized == 1.0);
}

TEST_CASE("normalized cost is at least 1 on random instances") {
  Rng rng(55);
  for (int trial = 0; trial < 50; ++trial) {
    GenSpec spec;
    spec.node_count = 8 + static_cast<uint32_t>(rng.uniform_int(0, 6));
    spec.edge_probability = 0.4;
    spec.seed = rng.next();
    const Topology t = gen_topology(spec);
    DemandSpec ds;
    ds.base_seed = rng.next();
    ds.density = 0.4;
    ds.magnitude = rng.uniform_real(0.5, 40.0);
    const DemandMatrix dm = gen_demands(t, ds);
    if (dm.entries().empty()) continue;
    const WeightVector w = random_initial(t, 20, rng.next());
    CHECK(evaluate(t, w, dm).normalized >= 1.0);
  }
}

TEST_CASE("normalized cost is invariant to joint capacity/demand scaling") {
  Rng rng(66);
  GenSpec spec;
  spec.node_count = 9;
  spec.edge_probability = 0.4;
  spec.seed = 3;
  const Topology t = gen_topology(spec);
  DemandSpec ds;
  ds.base_seed = 21;
  ds.density = 0.5;
  ds.magnitude = 20.0;
  const DemandMatrix dm = gen_demands(t, ds);
  const WeightVector w = random_initial(t, 10, 5);
  const CostReport base = evaluate(t, w, dm);

  for (double lambda : {0.25, 3.0, 1024.0}) {
    std::vector<Arc> arcs = t.arcs();
    for (Arc& a : arcs) a.capacity *= lambda;
    const Topology scaled_topo(t.node_count(), std::move(arcs));
    const CostReport scaled = evaluate(scaled_topo, w, dm.scaled(lambda));
    CHECK(scaled.normalized ==
          doctest::Approx(base.normalized).epsilon(1e-9));
    CHECK(scaled.total == doctest::Approx(base.total * lambda).epsilon(1e-9));
  }
}
