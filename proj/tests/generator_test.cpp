#include <gtest/gtest.h>

#include <set>

#include "pipecalc/errors.hpp"
#include "pipecalc/generator.hpp"

using namespace pipecalc;

TEST(SplitMix64, ReferenceSequence) {
  // First outputs for state 1234567, as published with the reference implementation.
  SplitMix64 rng(1234567);
  EXPECT_EQ(rng.next(), 6457827717110365317ULL);
  EXPECT_EQ(rng.next(), 3203168211198807973ULL);
  EXPECT_EQ(rng.next(), 9817491932198370423ULL);
}

TEST(SplitMix64, BelowStaysInRange) {
  SplitMix64 rng(7);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto v = rng.below(6);
    ASSERT_LT(v, 6u);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 6u);
}

TEST(Generator, DeterministicReplay) {
  GeneratorConfig cfg;
  cfg.seed = 42;
  for (std::uint64_t i : {0ULL, 1ULL, 77ULL, 9999ULL}) {
    const auto x = generate_instance(cfg, i);
    const auto y = generate_instance(cfg, i);
    EXPECT_EQ(x.pipeline, y.pipeline);
    EXPECT_EQ(x.multiplier, y.multiplier);
  }
  cfg.seed = 43;
  EXPECT_FALSE(generate_instance(cfg, 0).pipeline == generate_instance(GeneratorConfig{.seed = 42}, 0).pipeline &&
               generate_instance(cfg, 1).pipeline == generate_instance(GeneratorConfig{.seed = 42}, 1).pipeline);
}

TEST(Generator, RespectsGridsAndBounds) {
  GeneratorConfig cfg;
  cfg.seed = 5;
  cfg.max_stages = 4;
  std::set<std::size_t> sizes;
  for (std::uint64_t i = 0; i < 500; ++i) {
    const auto inst = generate_instance(cfg, i);
    sizes.insert(inst.pipeline.size());
    for (const auto& s : inst.pipeline.stages()) {
      EXPECT_GE(s.capacity, Rational(1));
      EXPECT_LE(s.capacity, Rational(10));
      EXPECT_TRUE(s.capacity.is_integer());
      const auto& f = inst.multiplier.factor(s.id);
      EXPECT_TRUE(f == 1 || f == Rational(3, 2) || f == 2 || f == 5);
    }
  }
  EXPECT_EQ(sizes, (std::set<std::size_t>{1, 2, 3, 4}));
}

TEST(Generator, TieAndUnitFactorFrequencies) {
  GeneratorConfig cfg;
  cfg.seed = 42;
  int tied = 0, unit = 0;
  for (std::uint64_t i = 0; i < cfg.instance_count; ++i) {
    const auto inst = generate_instance(cfg, i);
    const auto r = bottleneck_report(inst.pipeline);
    if (r.bottlenecks.size() >= 2) ++tied;
    for (const auto& id : r.bottlenecks) {
      if (inst.multiplier.factor(id) == 1) {
        ++unit;
        break;
      }
    }
  }
  EXPECT_GT(tied, 1000);
  EXPECT_GT(unit, 2000);
}

TEST(Generator, ConfigValidation) {
  GeneratorConfig cfg;
  EXPECT_THROW(generate_instance(cfg, cfg.instance_count), PreconditionError);
  cfg.factor_grid = {2, 3};
  EXPECT_THROW(cfg.validate(), ParameterError);
  cfg = {};
  cfg.capacity_grid.clear();
  EXPECT_THROW(cfg.validate(), ParameterError);
  cfg = {};
  cfg.max_stages = 0;
  EXPECT_THROW(cfg.validate(), ParameterError);
}
