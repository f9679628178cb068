#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "infbf/signed_log.hpp"

using infbf::SignedLogValue;

TEST(LogSumExp, MatchesDirectSumWithoutOverflow) {
  EXPECT_NEAR(infbf::log_sum_exp(std::log(2.0), std::log(3.0)), std::log(5.0), 1e-15);
  EXPECT_NEAR(infbf::log_sum_exp(1000.0, 1000.0), 1000.0 + std::log(2.0), 1e-12);
  EXPECT_EQ(infbf::log_sum_exp(infbf::kNegInf, 3.0), 3.0);
  const std::vector<double> xs{800.0, 800.0, 800.0, infbf::kNegInf};
  EXPECT_NEAR(infbf::log_sum_exp(xs), 800.0 + std::log(3.0), 1e-12);
}

TEST(LogDiffExp, SubtractsOnLogScale) {
  EXPECT_NEAR(infbf::log_diff_exp(std::log(5.0), std::log(3.0)), std::log(2.0), 1e-15);
  EXPECT_EQ(infbf::log_diff_exp(2.0, 2.0), infbf::kNegInf);
  EXPECT_NEAR(infbf::log_diff_exp(0.0, -40.0), std::log1p(-std::exp(-40.0)), 1e-17);
}

TEST(SignedLogValue, MultiplicationMultipliesSignsAndAddsLogs) {
  const auto a = SignedLogValue::from_log(500.0, -1);
  const auto b = SignedLogValue::from_log(400.0, -1);
  const auto c = a * b;
  EXPECT_EQ(c.sign(), 1);
  EXPECT_DOUBLE_EQ(c.log_magnitude(), 900.0);
  EXPECT_EQ((a * SignedLogValue{}).sign(), 0);
  EXPECT_EQ((a / b).sign(), 1);
  EXPECT_DOUBLE_EQ((a / b).log_magnitude(), 100.0);
}

TEST(SignedLogValue, AdditionOfEqualSignsPreservesSign) {
  const auto a = SignedLogValue::from_linear(-2.0);
  const auto b = SignedLogValue::from_linear(-3.0);
  const auto s = a + b;
  EXPECT_EQ(s.sign(), -1);
  EXPECT_NEAR(s.to_linear(), -5.0, 1e-15);
}

TEST(SignedLogValue, AdditionOfOppositeSignsTakesLargerSign) {
  EXPECT_NEAR((SignedLogValue::from_linear(2.0) + SignedLogValue::from_linear(-5.0)).to_linear(), -3.0, 1e-14);
  EXPECT_NEAR((SignedLogValue::from_linear(7.0) - SignedLogValue::from_linear(2.5)).to_linear(), 4.5, 1e-14);
  EXPECT_TRUE((SignedLogValue::from_linear(4.0) - SignedLogValue::from_linear(4.0)).is_zero());
}

TEST(SignedLogValue, LinearRoundTripIsExactInSign) {
  for (double x : {1e-300, -3.25, 7.0, -1e300, 0.0}) {
    const auto v = SignedLogValue::from_linear(x);
    if (x == 0.0) {
      EXPECT_TRUE(v.is_zero());
      continue;
    }
    EXPECT_EQ(v.sign(), x > 0 ? 1 : -1);
    // exp(ln|x|) carries the rounding of ln|x| scaled by |ln|x||.
    EXPECT_NEAR(v.to_linear() / x, 1.0, 4 * std::numeric_limits<double>::epsilon() * (1.0 + std::fabs(std::log(std::fabs(x)))));
  }
}

TEST(SignedLogValue, ProductIsAssociative) {
  const auto a = SignedLogValue::from_log(123.456, -1);
  const auto b = SignedLogValue::from_log(-77.0, 1);
  const auto c = SignedLogValue::from_log(1e-3, -1);
  const auto left = (a * b) * c;
  const auto right = a * (b * c);
  EXPECT_EQ(left.sign(), right.sign());
  EXPECT_NEAR(left.log_magnitude(), right.log_magnitude(), 1e-12 * std::fabs(left.log_magnitude()));
}
