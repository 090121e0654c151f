#include <gtest/gtest.h>

#include "pipecalc/adversarial.hpp"
#include "support.hpp"

using namespace pipecalc;
using testing_support::example1;
using testing_support::make;

TEST(Ratio, Examples) {
  const PipePair same{example1(), example1()};
  const Multiplier id = Multiplier::identity(example1());
  const auto r = ratio_report(same, id, id);
  EXPECT_EQ(r.baseline_ratio, r.perturbed_ratio);
  EXPECT_EQ(r.attacker_gain, Rational(1));
  EXPECT_EQ(r.defender_gain, Rational(1));
  EXPECT_FALSE(r.favours_attacker);

  const auto up = ratio_report(same, id.with(StageId("b"), 2), id);
  EXPECT_EQ(up.attacker_gain, Rational(2));
  EXPECT_TRUE(up.favours_attacker);
  EXPECT_GT(up.perturbed_ratio, up.baseline_ratio);

  const PipePair singles{make({2, 5}), make({3, 9})};
  const auto even = ratio_report(singles, Multiplier::uniform(singles.attacker, Rational(3, 2)),
                                 Multiplier::uniform(singles.defender, Rational(3, 2)));
  EXPECT_EQ(even.perturbed_ratio, even.baseline_ratio);
  EXPECT_FALSE(even.favours_attacker);
}

TEST(Ratio, DefenderMissesBottleneck) {
  const PipePair pair{example1(), example1()};
  const Multiplier id = Multiplier::identity(example1());
  const Multiplier fix_b = id.with(StageId("b"), 2);
  const Multiplier fix_ac = id.with(StageId("a"), 5).with(StageId("c"), 5);
  EXPECT_TRUE(defender_misses_bottleneck(pair, fix_b, fix_ac));
  EXPECT_TRUE(ratio_report(pair, fix_b, fix_ac).favours_attacker);
  EXPECT_FALSE(defender_misses_bottleneck(pair, id, id));
  EXPECT_FALSE(defender_misses_bottleneck(pair, fix_b, fix_b));
}

TEST(Ratio, EquivalenceProperty) {
  testing_support::Gen g(41);
  for (int i = 0; i < 1500; ++i) {
    const PipePair pair{g.pipeline(), g.pipeline()};
    const Multiplier aa = g.multiplier(pair.attacker);
    const Multiplier ad = g.multiplier(pair.defender);
    const auto r = ratio_report(pair, aa, ad);

    const Rational ta = testing_support::scan_min(testing_support::caps_of(pair.attacker));
    const Rational td = testing_support::scan_min(testing_support::caps_of(pair.defender));
    const Rational ta1 = testing_support::scan_min(testing_support::products_of(pair.attacker, aa));
    const Rational td1 = testing_support::scan_min(testing_support::products_of(pair.defender, ad));
    EXPECT_EQ(r.baseline_ratio, ta / td);
    EXPECT_EQ(r.perturbed_ratio, ta1 / td1);
    EXPECT_EQ(ta1 / td1 > ta / td, ta1 / ta > td1 / td);
    EXPECT_EQ(r.favours_attacker, ta1 / ta > td1 / td);
    if (defender_misses_bottleneck(pair, aa, ad)) EXPECT_TRUE(r.favours_attacker);
  }
}

TEST(Ratio, DefenderScaleLeavesVerdictAlone) {
  testing_support::Gen g(42);
  for (int i = 0; i < 500; ++i) {
    const PipePair pair{g.pipeline(), g.pipeline()};
    const Rational s = g.positive();
    std::vector<Rational> scaled;
    for (const auto& st : pair.defender.stages()) scaled.push_back(st.capacity * s);
    const PipePair big{pair.attacker, make(scaled)};
    const Multiplier aa = g.multiplier(pair.attacker);
    const Multiplier ad = g.multiplier(pair.defender);
    const auto r = ratio_report(pair, aa, ad);
    const auto q = ratio_report(big, aa, ad);
    EXPECT_EQ(q.baseline_ratio * s, r.baseline_ratio);
    EXPECT_EQ(q.perturbed_ratio * s, r.perturbed_ratio);
    EXPECT_EQ(q.favours_attacker, r.favours_attacker);
  }
}
