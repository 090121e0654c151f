#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "pipecalc/errors.hpp"
#include "pipecalc/false_positive.hpp"

using namespace pipecalc;

TEST(SimpleUseful, Examples) {
  EXPECT_EQ(simple_useful(20, FixedFractionModel(Rational(1, 2), 10)), Rational(5));
  EXPECT_EQ(simple_useful(7, FixedFractionModel(0, 10)), Rational(7));
  EXPECT_EQ(simple_useful(6, FixedFractionModel(Rational(1, 4), 8)), Rational(9, 2));
  EXPECT_THROW(FixedFractionModel(1, 10), DomainError);
  EXPECT_THROW(FixedFractionModel(Rational(-1, 2), 10), DomainError);
  EXPECT_THROW(FixedFractionModel(Rational(1, 2), 0), DomainError);
}

TEST(Plateau, Examples) {
  const std::vector<Rational> rates{11, 100, 1000000};
  const auto v = plateau_check(FixedFractionModel(Rational(1, 2), 10), rates);
  EXPECT_TRUE(v.pass());
  EXPECT_EQ(v.common_value, Rational(5));
  EXPECT_EQ(v.samples, 3u);
  EXPECT_EQ(plateau_check(FixedFractionModel(0, 10), rates).common_value, Rational(10));

  const std::vector<Rational> low{5, 20};
  EXPECT_THROW(plateau_check(FixedFractionModel(0, 10), low), PreconditionError);
}

TEST(Plateau, ManyRatesProperty) {
  for (int f = 0; f < 16; ++f) {
    const FixedFractionModel m(Rational(f, 16), Rational(37, 3));
    std::vector<Rational> rates;
    for (int i = 1; i <= 1000; ++i) rates.push_back(Rational(37, 3) + Rational(i, 7));
    const auto v = plateau_check(m, rates);
    EXPECT_TRUE(v.pass());
    EXPECT_EQ(v.common_value, (1 - Rational(f, 16)) * Rational(37, 3));
  }
}

TEST(Precision, Evaluation) {
  const auto r = PrecisionFunction::rational_decay(Rational(1, 10));
  EXPECT_EQ(repaired_useful(20, r, 10).exact(), Rational(10, 3));
  EXPECT_EQ(repaired_useful(40, r, 10).exact(), Rational(2));

  const auto t = PrecisionFunction::table({{10, 1}, {20, Rational(1, 2)}, {40, Rational(1, 4)}});
  EXPECT_EQ(repaired_useful(30, t, 10).exact(), Rational(15, 4));
  EXPECT_EQ(t.exact_at(20), Rational(1, 2));
  EXPECT_THROW(t.exact_at(41), DomainError);
  EXPECT_THROW(t.exact_at(9), DomainError);
  EXPECT_THROW(r.exact_at(0), DomainError);

  const auto c = PrecisionFunction::constant(Rational(1, 2));
  for (int rate : {11, 50, 900}) EXPECT_EQ(repaired_useful(rate, c, 10).exact(), Rational(5));
  EXPECT_EQ(repaired_useful(4, c, 10).exact(), Rational(2));

  const auto e = PrecisionFunction::exponential_decay(Rational(1, 20));
  EXPECT_FALSE(e.is_exact());
  const HighPrecision expected = 10 * exp(HighPrecision(-1));
  const HighPrecision got = repaired_useful(20, e, 10).approx();
  EXPECT_LT(abs(got - expected), HighPrecision("1e-30"));
}

TEST(Precision, ParseSpecs) {
  EXPECT_TRUE(PrecisionFunction::parse("constant:1/2").is_constant());
  EXPECT_EQ(PrecisionFunction::parse("rational:0.1").exact_at(10), Rational(1, 2));
  EXPECT_FALSE(PrecisionFunction::parse("exponential:1").is_exact());
  EXPECT_EQ(PrecisionFunction::parse("table:10=1,20=1/2").exact_at(15), Rational(3, 4));
  for (const char* bad : {"", "linear:1", "rational:-1", "constant:3/2", "table:", "table:10=1,5=1/2"}) {
    EXPECT_THROW(PrecisionFunction::parse(bad), Error) << bad;
  }
}

TEST(Precision, TableValidationAboveCapacityOnly) {
  const auto bumpy = PrecisionFunction::table({{1, Rational(1, 2)}, {5, 1}, {10, Rational(1, 2)}, {20, Rational(1, 4)}});
  EXPECT_NO_THROW(bumpy.validate_strictly_decreasing_above(5));
  EXPECT_THROW(bumpy.validate_strictly_decreasing_above(4), PreconditionError);
  const auto flat = PrecisionFunction::table({{10, 1}, {20, Rational(1, 2)}, {30, Rational(1, 2)}});
  EXPECT_THROW(flat.validate_strictly_decreasing_above(10), PreconditionError);
}

TEST(Decline, Verdicts) {
  const std::vector<Rational> rates{20, 40, 80};
  const auto r = decline_check(PrecisionFunction::rational_decay(Rational(1, 10)), 10, rates);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.mode, DeclineVerdict::Mode::StrictDecline);

  const std::vector<Rational> two{20, 40};
  const auto c = decline_check(PrecisionFunction::constant(Rational(1, 2)), 10, two);
  EXPECT_TRUE(c.pass());
  EXPECT_EQ(c.mode, DeclineVerdict::Mode::Constant);
  EXPECT_EQ(c.values.at(0).exact(), Rational(5));
  EXPECT_EQ(c.values.at(1).exact(), Rational(5));

  const std::vector<Rational> breaks{10, 20, 40};
  const std::vector<Rational> inside{Rational(21, 2), 20, 40};
  const auto t = PrecisionFunction::table({{10, 1}, {20, Rational(1, 2)}, {40, Rational(1, 4)}});
  EXPECT_TRUE(decline_check(t, 10, inside).pass());

  const auto e = decline_check(PrecisionFunction::exponential_decay(Rational(1, 100)), 10, rates);
  EXPECT_TRUE(e.pass());

  const std::vector<Rational> unsorted{40, 20};
  EXPECT_THROW(decline_check(PrecisionFunction::rational_decay(1), 10, unsorted), PreconditionError);
}

TEST(Decline, RationalFamilyProperty) {
  for (int k = 1; k <= 20; ++k) {
    for (int c = 1; c <= 12; ++c) {
      const auto p = PrecisionFunction::rational_decay(Rational(k, 7));
      Rational prev = repaired_useful(c + Rational(1, 3), p, c).exact();
      for (int i = 1; i < 30; ++i) {
        const Rational next = repaired_useful(c + Rational(1, 3) + i, p, c).exact();
        EXPECT_LT(next, prev);
        prev = next;
      }
    }
  }
}
