#pragma once

#include <map>

#include "pipecalc/pipeline.hpp"

namespace pipecalc {

/// Linear improvement cost: raising stage v to factor f costs
/// unit_cost(v) * (f - 1). Spending is capped by `budget`.
struct CostModel {
  std::map<StageId, Rational> unit_cost;
  Rational budget;

  static CostModel uniform(const Pipeline& p, const Rational& unit_cost, const Rational& budget);
};

/// Throws ValidationError unless unit costs cover exactly `p`'s stages, are
/// all positive, and the budget is nonnegative.
void validate_cost_model(const Pipeline& p, const CostModel& c);

/// Total cost of `a` under `c`.
Rational allocation_cost(const CostModel& c, const Multiplier& a);

struct AllocationResult {
  Multiplier multiplier;
  Rational achieved_throughput;
  Rational spent;
  /// Set when trivial_allocation stopped at the next-smallest capacity and
  /// left part of the budget unspent.
  bool cap_binding = false;
};

/// Spends the budget on the unique bottleneck, stopping once it reaches the
/// next-smallest capacity. Throws TiedBottleneckError when several stages
/// share the minimum: raising only some of them changes nothing, so use
/// maxmin_allocation instead.
AllocationResult trivial_allocation(const Pipeline& p, const CostModel& c);

/// Cheapest profile reaching throughput `target`: factor max(1, target / c(v)).
Multiplier cost_minimal_profile(const Pipeline& p, const Rational& target);

/// Maximises perturbed throughput under the budget. The optimal target t* is
/// bracketed by bisection on a lattice of spacing below `tolerance`; the
/// returned multiplier is the cost-minimal profile for the bracket's lower
/// end, so it is always feasible and within `tolerance` of t*. The lattice
/// depends only on the pipeline and the tolerance, which makes the result
/// nondecreasing in the budget.
///
/// Throws ParameterError for tolerance <= 0.
AllocationResult maxmin_allocation(const Pipeline& p, const CostModel& c, const Rational& tolerance);

}  // namespace pipecalc
