#include <gtest/gtest.h>

#include "pipecalc/errors.hpp"
#include "pipecalc/planner.hpp"
#include "support.hpp"

using namespace pipecalc;
using testing_support::example1;
using testing_support::make;

namespace {

CostModel unit(const Pipeline& p, const Rational& budget) { return CostModel::uniform(p, 1, budget); }

const Rational kTol(1, 1024);

// Best throughput over factors 1 + k/8, exhaustively, for pipelines of up to three stages.
Rational grid_optimum(const Pipeline& p, const Rational& budget) {
  const auto caps = testing_support::caps_of(p);
  const int steps = static_cast<int>((budget * 8).floor().get_si());
  Rational best = 0;
  std::vector<int> k(caps.size(), 0);
  while (true) {
    int spent = 0;
    for (int x : k) spent += x;
    if (spent <= steps) {
      Rational t = caps[0] * (1 + Rational(k[0], 8));
      for (std::size_t i = 1; i < caps.size(); ++i) t = min(t, caps[i] * (1 + Rational(k[i], 8)));
      best = max(best, t);
    }
    std::size_t i = 0;
    while (i < k.size() && ++k[i] > steps) k[i++] = 0;
    if (i == k.size()) break;
  }
  return best;
}

}  // namespace

TEST(Trivial, Examples) {
  const auto one = trivial_allocation(example1(), unit(example1(), 1));
  EXPECT_EQ(one.multiplier.factor(StageId("b")), Rational(2));
  EXPECT_EQ(one.achieved_throughput, Rational(2));
  EXPECT_EQ(one.spent, Rational(1));
  EXPECT_FALSE(one.cap_binding);

  const auto zero = trivial_allocation(example1(), unit(example1(), 0));
  EXPECT_EQ(zero.multiplier, Multiplier::identity(example1()));
  EXPECT_EQ(zero.achieved_throughput, Rational(1));

  const auto capped = trivial_allocation(example1(), unit(example1(), 5));
  EXPECT_EQ(capped.multiplier.factor(StageId("b")), Rational(3));
  EXPECT_EQ(capped.achieved_throughput, Rational(3));
  EXPECT_EQ(capped.spent, Rational(2));
  EXPECT_TRUE(capped.cap_binding);

  EXPECT_THROW(trivial_allocation(make({2, 2, 5}), unit(make({2, 2, 5}), 1)), TiedBottleneckError);
}

TEST(MaxMin, Examples) {
  const auto zero = maxmin_allocation(example1(), unit(example1(), 0), kTol);
  EXPECT_EQ(zero.multiplier, Multiplier::identity(example1()));
  EXPECT_EQ(zero.achieved_throughput, Rational(1));

  // Both tied stages rise together.
  const Pipeline tied = make({2, 2, 5});
  const auto one = maxmin_allocation(tied, unit(tied, 1), kTol);
  EXPECT_EQ(one.achieved_throughput, Rational(3));
  EXPECT_EQ(one.multiplier.factor(StageId("s1")), Rational(3, 2));
  EXPECT_EQ(one.multiplier.factor(StageId("s2")), Rational(3, 2));
  const auto two = maxmin_allocation(tied, unit(tied, 2), kTol);
  EXPECT_EQ(two.achieved_throughput, Rational(4));
  EXPECT_EQ(two.spent, Rational(2));

  // Large budget: every stage ties at t with t/3 - 1 + t - 1 + t/4 - 1 = budget.
  for (int budget : {10, 25, 100}) {
    const auto r = maxmin_allocation(example1(), unit(example1(), budget), kTol);
    const Rational t = Rational(budget + 3) * Rational(12, 19);
    EXPECT_LE(r.achieved_throughput, t);
    EXPECT_GE(r.achieved_throughput, t - kTol);
    EXPECT_LE(r.spent, Rational(budget));
  }

  EXPECT_THROW(maxmin_allocation(example1(), unit(example1(), 1), 0), ParameterError);
  EXPECT_THROW(maxmin_allocation(example1(), unit(example1(), -1), kTol), Error);
}

TEST(MaxMin, CostMinimalProfile) {
  const auto a = cost_minimal_profile(example1(), 2);
  EXPECT_EQ(a, Multiplier::in_stage_order(example1(), {1, 2, 1}));
  EXPECT_EQ(allocation_cost(unit(example1(), 0), a), Rational(1));
}

TEST(MaxMin, FeasibleOptimalAndMonotoneProperty) {
  testing_support::Gen g(51);
  for (int i = 0; i < 120; ++i) {
    std::vector<Rational> caps;
    const int n = g.integer(1, 3);
    for (int k = 0; k < n; ++k) caps.push_back(g.integer(1, 6));
    const Pipeline p = make(caps);
    Rational prev = 0;
    for (int b = 0; b <= 3; ++b) {
      CostModel c = unit(p, b);
      const auto r = maxmin_allocation(p, c, kTol);
      EXPECT_LE(r.spent, Rational(b));
      EXPECT_EQ(r.spent, allocation_cost(c, r.multiplier));
      EXPECT_EQ(r.achieved_throughput, perturbed_throughput(p, r.multiplier));
      EXPECT_GE(r.achieved_throughput, grid_optimum(p, b) - kTol);
      EXPECT_GE(r.achieved_throughput, prev);
      prev = r.achieved_throughput;
      if (r.achieved_throughput > throughput(p)) {
        for (const auto& id : bottleneck_report(p).bottlenecks) EXPECT_GT(r.multiplier.factor(id), Rational(1));
      }
    }
  }
}

TEST(MaxMin, NonUniformCosts) {
  CostModel c = unit(example1(), 2);
  c.unit_cost[StageId("b")] = 4;
  const auto r = maxmin_allocation(example1(), c, kTol);
  EXPECT_EQ(r.achieved_throughput, Rational(3, 2));
  EXPECT_EQ(r.spent, Rational(2));
  c.unit_cost[StageId("b")] = 0;
  EXPECT_THROW(validate_cost_model(example1(), c), Error);
}
