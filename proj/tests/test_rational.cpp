#include "finconn/rational.hpp"

#include <gtest/gtest.h>

using finconn::Rational;

TEST(Rational, NormalizesAndReduces) {
  Rational r(6, -8);
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 4);
  EXPECT_EQ(Rational(0, 5), Rational(0));
}

TEST(Rational, Arithmetic) {
  Rational a(1, 2), b(1, 3);
  EXPECT_EQ(a + b, Rational(5, 6));
  EXPECT_EQ(a - b, Rational(1, 6));
  EXPECT_EQ(a * b, Rational(1, 6));
  EXPECT_EQ(a / b, Rational(3, 2));
  EXPECT_LT(b, a);
}

TEST(Rational, PowersOfLawDenominatorsStayExact) {
  // 12 lazy steps: denominators 4^12
  Rational p(1, 4);
  Rational acc(1);
  for (int i = 0; i < 12; ++i) acc *= p;
  EXPECT_EQ(acc.den(), 16777216);
  EXPECT_DOUBLE_EQ(acc.to_double(), std::pow(0.25, 12));
}

TEST(Rational, ThrowsOnZeroDenominator) {
  EXPECT_THROW(Rational(1, 0), finconn::ValidationError);
}
