#pragma once

#include <optional>
#include <string>
#include <variant>

namespace infbf {

enum class Design { OneSampleOrPaired, TwoSampleIndependent };

/// The summary statistics a t-test reports: the t-value and the sample size(s).
///
/// Everything else about the raw data is integrated out analytically, so the
/// engine only ever sees (t, nu, n_eff). Construction rejects inputs outside
/// the closed forms' validity: every group needs more than one observation.
class TTestSummary {
 public:
  static TTestSummary one_sample(double t, long n);
  static TTestSummary two_sample(double t, long n1, long n2);

  Design design() const noexcept { return design_; }
  double t() const noexcept { return t_; }
  long n1() const noexcept { return n1_; }
  std::optional<long> n2() const noexcept { return n2_; }

  // Degrees of freedom: n - 1, or n1 + n2 - 2.
  double df() const noexcept;
  // Effective sample size: n, or n1 n2 / (n1 + n2).
  double n_eff() const noexcept;

  TTestSummary with_t(double t) const;

 private:
  TTestSummary(Design design, double t, long n1, std::optional<long> n2);

  Design design_;
  double t_;
  long n1_;
  std::optional<long> n2_;
};

struct StudentTPrior {
  double location;
  double scale;
  double df;
};

struct NormalPrior {
  double mean;
  double variance;
};

enum class Truncation { None, PositiveOnly, NegativeOnly };

/// Prior on the effect size under the alternative: a shifted and scaled
/// Student-t or a normal, optionally restricted (and renormalised) to one side
/// of zero.
struct EffectSizePrior {
  std::variant<StudentTPrior, NormalPrior> family;
  Truncation truncation = Truncation::None;

  static EffectSizePrior student_t(double location, double scale, double df,
                                   Truncation truncation = Truncation::None);
  static EffectSizePrior normal(double mean, double variance,
                                Truncation truncation = Truncation::None);
  // Cauchy(0, 1/sqrt(2)), the conventional default.
  static EffectSizePrior default_cauchy(Truncation truncation = Truncation::None);

  bool is_student_t() const noexcept { return std::holds_alternative<StudentTPrior>(family); }
  EffectSizePrior untruncated() const;
  EffectSizePrior truncated(Truncation side) const;

  double location() const noexcept;
  // Scale r for t priors, standard deviation sqrt(g) for normal priors.
  double spread() const noexcept;

  void validate() const;
};

// Density of the untruncated family.
double prior_family_logpdf(const EffectSizePrior& prior, double delta);
// Log mass of the untruncated family above / below zero.
double prior_log_mass_positive(const EffectSizePrior& prior);
double prior_log_mass_negative(const EffectSizePrior& prior);
// Density including truncation and renormalisation; -inf off the support.
double prior_logpdf(const EffectSizePrior& prior, double delta);

enum class Orientation { TwoSided, PositiveVsNull, NegativeVsNull };

struct BayesFactorResult {
  double log_bf10 = 0.0;
  Orientation orientation = Orientation::TwoSided;
  struct Diagnostics {
    std::optional<double> g_integral_log;
    double quadrature_error_estimate = 0.0;
  } diagnostics;

  double bf10() const;
};

std::string to_string(Orientation orientation);
std::string to_string(Design design);
std::string to_string(const EffectSizePrior& prior);

}  // namespace infbf
