#include "dynsamp/real.hpp"

#include <cmath>

#include "dynsamp/errors.hpp"
#include "gtest/gtest.h"

namespace dynsamp {

TEST(Real, DefaultIsZero) {
  Real x;
  EXPECT_TRUE(x.is_zero());
  EXPECT_EQ(x.prec(), 64);
  EXPECT_EQ(x.sign(), 0);
}

TEST(Real, ConstructorsRoundTripDoubles) {
  Real a(0.1, 64);
  EXPECT_DOUBLE_EQ(a.to_double(), 0.1);
  Real b(-3L, 128);
  EXPECT_EQ(b.to_long(), -3);
  EXPECT_TRUE(b.is_negative());
}

TEST(Real, DecimalStringRoundTripIsExact) {
  for (mpfr_prec_t p : {64, 192, 1024}) {
    Real x = Real::pi(p) / 7 + Real(0.625, p);
    Real back(x.str(), p);
    EXPECT_TRUE(x == back) << "prec=" << p;
  }
}

TEST(Real, MalformedDecimalThrows) {
  EXPECT_THROW(Real("1.2.3", 64), Error);
  EXPECT_THROW(Real("", 64), Error);
  EXPECT_THROW(Real("pi", 64), Error);
}

TEST(Real, PiAndLn2Digits) {
  EXPECT_NEAR(Real::pi(128).to_double(), 3.14159265358979324, 1e-15);
  EXPECT_NEAR(Real::ln2(128).to_double(), 0.693147180559945309, 1e-16);
}

TEST(Real, BinaryOpsWidenToTheLargerPrecision) {
  Real a(1.0, 64);
  Real b(1.0, 256);
  EXPECT_EQ((a + b).prec(), 256);
  EXPECT_EQ((b * a).prec(), 256);
  a += b;
  EXPECT_EQ(a.prec(), 256);
}

TEST(Real, LdexpIsExact) {
  Real x(3.0, 64);
  Real y = ldexp(x, -200);
  EXPECT_TRUE(ldexp(y, 200) == x);
}

TEST(Real, ExpLogInverseAtHighPrecision) {
  Real x(1.75, 512);
  Real back = log(exp(x));
  // relative error stays near the 512 bit rounding scale
  EXPECT_LE(abs(back - x).to_double(), std::ldexp(1.0, -500));
}

TEST(Real, Expm1MatchesExpMinusOne) {
  Real t(1e-30, 256);
  Real lhs = expm1(t);
  Real rhs = exp(t) - Real(1L, 256);
  // exp(t) - 1 cancels most of the mantissa; expm1 keeps it
  EXPECT_NEAR((lhs / t).to_double(), 1.0, 1e-25);
  EXPECT_LE(abs(lhs - rhs).to_double(), std::ldexp(1.0, -250));
}

TEST(Real, ComparisonsAndMinMax) {
  Real a(0.5, 64), b(0.75, 64);
  EXPECT_TRUE(a < b);
  EXPECT_TRUE(b >= a);
  EXPECT_TRUE(a != b);
  EXPECT_TRUE(max(a, b) == b);
  EXPECT_TRUE(min(a, b) == a);
}

TEST(Real, RoundedToTruncatesTheMantissa) {
  Real x = Real(1L, 256) / 3;
  Real r = x.rounded_to(64);
  EXPECT_EQ(r.prec(), 64);
  EXPECT_LE(abs(r - x).to_double(), std::ldexp(1.0, -64));
}

TEST(Real, IntegerOperatorOverloads) {
  Real x(2.0, 96);
  EXPECT_DOUBLE_EQ((x * 3L).to_double(), 6.0);
  EXPECT_DOUBLE_EQ((x / 4L).to_double(), 0.5);
  EXPECT_DOUBLE_EQ((x + 1L).to_double(), 3.0);
  EXPECT_DOUBLE_EQ((1L - x).to_double(), -1.0);
  EXPECT_DOUBLE_EQ((-x).to_double(), -2.0);
}

TEST(Real, PowMatchesRepeatedProduct) {
  Real x(1.5, 128);
  EXPECT_TRUE(pow(x, 3UL) == x * x * x);
}

}  // namespace dynsamp
