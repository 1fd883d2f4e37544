#include <gtest/gtest.h>

#include "kgame/bits.hpp"
#include "kgame/rational.hpp"

namespace kgame {
namespace {

TEST(BitString, IntegerEncodingHasNoLeadingZeros) {
  EXPECT_EQ(BitString::from_integer(0).str(), "");
  EXPECT_EQ(BitString::from_integer(1).str(), "1");
  EXPECT_EQ(BitString::from_integer(6).str(), "110");
  for (uint64_t v = 0; v < 300; ++v) {
    EXPECT_EQ(BitString::from_integer(v).as_integer(), v);
    EXPECT_EQ(static_cast<int>(BitString::from_integer(v).size()), bit_length(v));
  }
  EXPECT_FALSE(BitString::parse("01").as_integer().has_value());
}

TEST(BitString, FixedWidthValueRoundTrips) {
  EXPECT_EQ(BitString::from_value(5, 4).str(), "0101");
  EXPECT_EQ(BitString::from_value(5, 4).value(), 5u);
  EXPECT_EQ(BitString().value(), 0u);
  EXPECT_THROW(BitString::parse("012"), std::invalid_argument);
}

TEST(BitString, Enumeration) {
  auto all = all_strings(3);
  ASSERT_EQ(all.size(), 8u);
  for (uint64_t v = 0; v < 8; ++v) EXPECT_EQ(all[v].value(), v);
  auto range = all_strings(0, 2);
  ASSERT_EQ(range.size(), 7u);
  EXPECT_TRUE(range.front().empty());
  for (size_t i = 1; i < range.size(); ++i) EXPECT_TRUE(shortlex_less(range[i - 1], range[i]));
}

TEST(BitString, Logs) {
  EXPECT_EQ(floor_log2(1), 0);
  EXPECT_EQ(floor_log2(7), 2);
  EXPECT_EQ(floor_log2(8), 3);
  EXPECT_EQ(bit_length(0), 0);
  EXPECT_EQ(bit_length(8), 4);
}

TEST(Rational, FormatAndStrictParse) {
  EXPECT_EQ(format_rational(Rational(0)), "0/1");
  EXPECT_EQ(format_rational(Rational(3, 6)), "1/2");
  EXPECT_EQ(parse_rational("5719/2048"), Rational(5719, 2048));
  for (const char* bad : {"2/4", "01/2", "1/0", "-1/2", "1", "1/", "/2", "1/2 ", "a/b"}) {
    EXPECT_THROW(parse_rational(bad), std::invalid_argument) << bad;
  }
}

TEST(Rational, Powers) {
  EXPECT_EQ(pow2_neg(0), 1);
  EXPECT_EQ(pow2_neg(5), Rational(1, 32));
  EXPECT_EQ(pow2(10), 1024);
  // Exact far below double precision.
  EXPECT_GT(pow2_neg(200) + 1, Rational(1));
}

TEST(Rational, NextDyadicAboveIsStrict) {
  EXPECT_EQ(next_dyadic_above(Rational(1, 4), 4), Rational(5, 16));
  EXPECT_EQ(next_dyadic_above(Rational(1, 3), 2), Rational(1, 2));
  EXPECT_EQ(next_dyadic_above(Rational(0), 3), Rational(1, 8));
  for (int d = 1; d < 40; ++d) {
    Rational r(d, 37);
    Rational up = next_dyadic_above(r, 10);
    EXPECT_GT(up, r);
    EXPECT_LE(up - r, pow2_neg(10));
    EXPECT_EQ(boost::multiprecision::denominator(up * 1024), 1);
  }
}

}  // namespace
}  // namespace kgame
