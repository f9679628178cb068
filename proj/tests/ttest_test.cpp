#include <cmath>
#include <stdexcept>
#include <string>

#include <gtest/gtest.h>

#include "infbf/quadrature.hpp"
#include "infbf/ttest.hpp"

using namespace infbf;

TEST(TTestSummary, DerivedQuantities) {
  const auto one = TTestSummary::one_sample(6.22, 173);
  EXPECT_EQ(one.df(), 172.0);
  EXPECT_EQ(one.n_eff(), 173.0);
  const auto two = TTestSummary::two_sample(2.0, 24, 26);
  EXPECT_EQ(two.df(), 48.0);
  EXPECT_DOUBLE_EQ(two.n_eff(), 12.48);
  EXPECT_EQ(two.with_t(-1.0).t(), -1.0);
  EXPECT_EQ(two.with_t(-1.0).n2(), 26);
}

TEST(TTestSummary, SingleObservationIsRejectedWithReason) {
  try {
    TTestSummary::one_sample(1.0, 1);
    FAIL();
  } catch (const std::domain_error& e) {
    EXPECT_NE(std::string(e.what()).find("more than one observation"), std::string::npos);
  }
  EXPECT_THROW(TTestSummary::two_sample(1.0, 1, 30), std::domain_error);
  EXPECT_THROW(TTestSummary::two_sample(1.0, 30, 1), std::domain_error);
  EXPECT_NO_THROW(TTestSummary::two_sample(1.0, 2, 2));
}

TEST(TTestSummary, ImplausibleTIsRejected) {
  EXPECT_THROW(TTestSummary::one_sample(1.5e6, 10), std::domain_error);
  EXPECT_THROW(TTestSummary::one_sample(std::nan(""), 10), std::domain_error);
  EXPECT_NO_THROW(TTestSummary::one_sample(-1e6, 10));
}

TEST(EffectSizePrior, Validation) {
  EXPECT_THROW(EffectSizePrior::student_t(0.0, 0.0, 1.0), std::domain_error);
  EXPECT_THROW(EffectSizePrior::student_t(0.0, 1.0, -2.0), std::domain_error);
  EXPECT_THROW(EffectSizePrior::normal(0.0, 0.0), std::domain_error);
  const auto d = EffectSizePrior::default_cauchy();
  EXPECT_DOUBLE_EQ(d.spread(), 1.0 / std::sqrt(2.0));
  EXPECT_EQ(d.location(), 0.0);
}

TEST(EffectSizePrior, TruncatedDensityIntegratesToOne) {
  for (const auto& family : {EffectSizePrior::student_t(0.35, 0.102, 3.0), EffectSizePrior::normal(-0.2, 0.09)}) {
    const auto pos = family.truncated(Truncation::PositiveOnly);
    const auto neg = family.truncated(Truncation::NegativeOnly);
    const auto mass_pos = integrate_upper_tail_log([&](double d) { return prior_logpdf(pos, d); }, 0.0);
    const auto mass_neg = integrate_lower_tail_log([&](double d) { return prior_logpdf(neg, d); }, 0.0);
    EXPECT_NEAR(mass_pos.log_value, 0.0, 1e-9);
    EXPECT_NEAR(mass_neg.log_value, 0.0, 1e-9);
    EXPECT_EQ(prior_logpdf(pos, -0.1), -INFINITY);
    EXPECT_EQ(prior_logpdf(neg, 0.1), -INFINITY);
    EXPECT_NEAR(std::exp(prior_log_mass_positive(family)) + std::exp(prior_log_mass_negative(family)), 1.0, 1e-15);
  }
}

TEST(EffectSizePrior, SpecStrings) {
  EXPECT_EQ(to_string(EffectSizePrior::student_t(0.35, 0.102, 3.0, Truncation::PositiveOnly)),
            "t:0.34999999999999998,0.10199999999999999,3+trunc=pos");
  EXPECT_EQ(to_string(EffectSizePrior::normal(0.0, 1.0)), "normal:0,1");
  EXPECT_EQ(to_string(Orientation::PositiveVsNull), "positive-vs-null");
  EXPECT_EQ(to_string(Design::TwoSampleIndependent), "two");
}
