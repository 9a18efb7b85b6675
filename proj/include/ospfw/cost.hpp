#pragma once

#include <span>
#include <vector>

#include "ospfw/net.hpp"
#include "ospfw/routing.hpp"

namespace ospfw {

// kPiecewiseLinear: continuous convex cost with slopes 1, 3, 10, 70, 500,
// 5000 over the utilization bands 0-1/3, 1/3-2/3, 2/3-9/10, 9/10-1, 1-11/10
// and beyond. kStep: the literal per-band constants, kept for sensitivity
// studies.
enum class CostKind { kPiecewiseLinear, kStep };

inline constexpr double kUtilBreaks[] = {1.0 / 3.0, 2.0 / 3.0, 9.0 / 10.0,
                                         1.0, 11.0 / 10.0};
inline constexpr double kBandSlopes[] = {1.0, 3.0, 10.0, 70.0, 500.0, 5000.0};

double arc_cost(double load, double capacity,
                CostKind kind = CostKind::kPiecewiseLinear);

struct CostReport {
  double total = 0.0;            // sum of per-arc costs, arc-index order
  double normalized = 0.0;       // total / uncapacitated min-hop cost
  std::vector<double> per_arc;
  double max_utilization = 0.0;
};

// total, per_arc and max_utilization only; normalized left at 0.
CostReport network_cost(const FlowSolution& fs, const Topology& topo,
                        CostKind kind = CostKind::kPiecewiseLinear);

// Sum over demand pairs of demand x min-hop count. Weight- and
// capacity-independent; the normalization denominator.
double uncap_cost(const Topology& topo, const DemandMatrix& dm);

// total_cost / uncap; throws kZeroUncap when uncap == 0.
double normalized_cost(double total_cost, double uncap);

struct PhiResult {
  double total = 0.0;
  double max_utilization = 0.0;
};

// Hot path: cost straight from per-arc totals.
PhiResult cost_of_totals(std::span<const double> totals, const Topology& topo,
                         CostKind kind = CostKind::kPiecewiseLinear);

// Full pipeline for one topology: route, cost, normalize.
CostReport evaluate(const Topology& topo, const WeightVector& w,
                    const DemandMatrix& dm,
                    CostKind kind = CostKind::kPiecewiseLinear);

}  // namespace ospfw
