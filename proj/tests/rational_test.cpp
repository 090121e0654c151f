#include <gtest/gtest.h>

#include "pipecalc/rational.hpp"

using pipecalc::Rational;

TEST(Rational, ParsesIntegerDecimalAndFractionText) {
  EXPECT_EQ(Rational::parse("3"), Rational(3));
  EXPECT_EQ(Rational::parse("3.25"), Rational(13, 4));
  EXPECT_EQ(Rational::parse("13/4"), Rational(13, 4));
  EXPECT_EQ(Rational::parse("-3"), Rational(-3));
  EXPECT_EQ(Rational::parse(".5"), Rational(1, 2));
  EXPECT_EQ(Rational::parse("0.1") * 10, Rational(1));
}

TEST(Rational, RejectsMalformedText) {
  for (const char* bad : {"", "abc", "1/0", "1.2.3", "3/", "/4", "1e5", " 3"}) {
    EXPECT_FALSE(Rational::try_parse(bad).has_value()) << bad;
    EXPECT_THROW(Rational::parse(bad), std::invalid_argument) << bad;
  }
}

TEST(Rational, CanonicalStrings) {
  EXPECT_EQ(Rational(6, 4).str(), "3/2");
  EXPECT_EQ(Rational(4, 2).str(), "2");
  EXPECT_EQ(Rational(-1, 3).str(), "-1/3");
  EXPECT_EQ(Rational(0).str(), "0");
}

TEST(Rational, ArithmeticAndOrder) {
  const Rational a(1, 3), b(1, 6);
  EXPECT_EQ(a + b, Rational(1, 2));
  EXPECT_EQ(a - b, b);
  EXPECT_EQ(a * b, Rational(1, 18));
  EXPECT_EQ(a / b, Rational(2));
  EXPECT_LT(b, a);
  EXPECT_EQ(pipecalc::min(a, b), b);
  EXPECT_EQ(pipecalc::max(a, b), a);
  EXPECT_THROW(a / Rational(0), std::domain_error);
  EXPECT_EQ(Rational(7, 2).ceil(), 4);
  EXPECT_EQ(Rational(7, 2).floor(), 3);
  EXPECT_EQ(Rational(-7, 2).ceil(), -3);
}

TEST(Rational, StringRoundTripProperty) {
  for (int n = -40; n <= 40; ++n) {
    for (int d = 1; d <= 12; ++d) {
      const Rational r(n, d);
      EXPECT_EQ(Rational::parse(r.str()), r);
    }
  }
}
