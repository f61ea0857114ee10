#include "hlmax/rational.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace hlmax;

TEST(Rational, CanonicalText) {
  EXPECT_EQ(to_string(Rational(6, 4)), "3/2");
  EXPECT_EQ(to_string(Rational(-6, 3)), "-2");
  EXPECT_EQ(to_string(Rational(0)), "0");
  EXPECT_EQ(to_string(Rational(3, -9)), "-1/3");
}

TEST(Rational, ParsesFractionsIntegersAndDecimals) {
  EXPECT_EQ(parse_rational("3/4"), Rational(3, 4));
  EXPECT_EQ(parse_rational("-12"), Rational(-12));
  EXPECT_EQ(parse_rational("0.1"), Rational(1, 10));
  EXPECT_EQ(parse_rational("1e-3"), Rational(1, 1000));
  EXPECT_EQ(parse_rational("-2.5E2"), Rational(-250));
  EXPECT_EQ(parse_rational(" 6/8 "), Rational(3, 4));
}

TEST(Rational, RejectsMalformed) {
  for (const char* bad : {"", "1/0", "abc", "1/2/3", "1.2.3", "--1", "1e", "0x10", "1/-"}) {
    EXPECT_THROW(parse_rational(bad), RationalParseError) << bad;
  }
}

TEST(Rational, DecimalRendering) {
  EXPECT_EQ(to_decimal(Rational(1, 3), 4), "0.3333");
  EXPECT_EQ(to_decimal(Rational(2, 3), 4), "0.6667");
  EXPECT_EQ(to_decimal(Rational(-1, 8), 2), "-0.13");
  EXPECT_EQ(to_decimal(Rational(5), 0), "5");
  EXPECT_EQ(to_decimal(Rational(-1, 1000), 2), "0.00");
}

TEST(Rational, TreeSumMatchesLeftFold) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 40);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Rational> xs;
    for (int i = 0; i < trial; ++i) {
      Rational q(num(rng), den(rng));
      q.canonicalize();
      xs.push_back(q);
    }
    Rational fold = 0;
    for (const auto& x : xs) fold += x;
    EXPECT_EQ(tree_sum(xs), fold);
  }
}

TEST(Rational, CommonDenominatorAndNarrowing) {
  std::vector<Rational> v{Rational(1, 4), Rational(5, 6), Rational(2)};
  EXPECT_EQ(common_denominator(v), BigInt(12));
  EXPECT_EQ(to_int64(BigInt("9223372036854775807")), INT64_MAX);
  EXPECT_FALSE(fits_int64(BigInt("9223372036854775808")));
  EXPECT_THROW(to_int64(BigInt("-9223372036854775809")), std::overflow_error);
}
