#include "infbf/ttest.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "infbf/special_math.hpp"

namespace infbf {
namespace {

constexpr double kMaxAbsT = 1e6;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

TTestSummary::TTestSummary(Design design, double t, long n1, std::optional<long> n2)
    : design_(design), t_(t), n1_(n1), n2_(n2) {
  if (!std::isfinite(t)) throw std::domain_error("t-statistic must be finite");
  if (std::fabs(t) > kMaxAbsT) throw std::domain_error("|t| > 1e6 is not a plausible t-statistic");
  if (design == Design::OneSampleOrPaired) {
    if (n1 < 2) {
      throw std::domain_error(
          "one-sample/paired design requires more than one observation (n >= 2)");
    }
  } else {
    if (!n2 || n1 < 2 || *n2 < 2) {
      throw std::domain_error(
          "two-sample design requires more than one observation in each group (n1, n2 >= 2)");
    }
  }
}

TTestSummary TTestSummary::one_sample(double t, long n) {
  return {Design::OneSampleOrPaired, t, n, std::nullopt};
}

TTestSummary TTestSummary::two_sample(double t, long n1, long n2) {
  return {Design::TwoSampleIndependent, t, n1, n2};
}

double TTestSummary::df() const noexcept {
  return design_ == Design::OneSampleOrPaired ? static_cast<double>(n1_ - 1)
                                              : static_cast<double>(n1_ + *n2_ - 2);
}

double TTestSummary::n_eff() const noexcept {
  if (design_ == Design::OneSampleOrPaired) return static_cast<double>(n1_);
  const double a = static_cast<double>(n1_);
  const double b = static_cast<double>(*n2_);
  return a * b / (a + b);
}

TTestSummary TTestSummary::with_t(double t) const { return {design_, t, n1_, n2_}; }

EffectSizePrior EffectSizePrior::student_t(double location, double scale, double df,
                                           Truncation truncation) {
  EffectSizePrior p{StudentTPrior{location, scale, df}, truncation};
  p.validate();
  return p;
}

EffectSizePrior EffectSizePrior::normal(double mean, double variance, Truncation truncation) {
  EffectSizePrior p{NormalPrior{mean, variance}, truncation};
  p.validate();
  return p;
}

EffectSizePrior EffectSizePrior::default_cauchy(Truncation truncation) {
  return student_t(0.0, 1.0 / std::sqrt(2.0), 1.0, truncation);
}

EffectSizePrior EffectSizePrior::untruncated() const { return {family, Truncation::None}; }

EffectSizePrior EffectSizePrior::truncated(Truncation side) const { return {family, side}; }

double EffectSizePrior::location() const noexcept {
  return std::visit(Overloaded{[](const StudentTPrior& t) { return t.location; },
                               [](const NormalPrior& n) { return n.mean; }},
                    family);
}

double EffectSizePrior::spread() const noexcept {
  return std::visit(Overloaded{[](const StudentTPrior& t) { return t.scale; },
                               [](const NormalPrior& n) { return std::sqrt(n.variance); }},
                    family);
}

void EffectSizePrior::validate() const {
  std::visit(Overloaded{[](const StudentTPrior& t) {
                          if (!std::isfinite(t.location)) {
                            throw std::domain_error("t prior: location must be finite");
                          }
                          if (!(t.scale > 0.0 && std::isfinite(t.scale))) {
                            throw std::domain_error("t prior: scale must be positive");
                          }
                          if (!(t.df > 0.0 && std::isfinite(t.df))) {
                            throw std::domain_error("t prior: df must be positive");
                          }
                        },
                        [](const NormalPrior& n) {
                          if (!std::isfinite(n.mean)) {
                            throw std::domain_error("normal prior: mean must be finite");
                          }
                          if (!(n.variance > 0.0 && std::isfinite(n.variance))) {
                            throw std::domain_error("normal prior: variance must be positive");
                          }
                        }},
             family);
}

double prior_family_logpdf(const EffectSizePrior& prior, double delta) {
  return std::visit(
      Overloaded{[delta](const StudentTPrior& t) {
                   return student_t_logpdf(delta, t.location, t.scale, t.df);
                 },
                 [delta](const NormalPrior& n) { return normal_logpdf(delta, n.mean, n.variance); }},
      prior.family);
}

double prior_log_mass_positive(const EffectSizePrior& prior) {
  return std::log(std::visit(
      Overloaded{[](const StudentTPrior& t) { return student_t_sf(0.0, t.location, t.scale, t.df); },
                 [](const NormalPrior& n) { return normal_sf(0.0, n.mean, n.variance); }},
      prior.family));
}

double prior_log_mass_negative(const EffectSizePrior& prior) {
  return std::log(std::visit(
      Overloaded{
          [](const StudentTPrior& t) { return student_t_cdf(0.0, t.location, t.scale, t.df); },
          [](const NormalPrior& n) { return normal_cdf(0.0, n.mean, n.variance); }},
      prior.family));
}

double prior_logpdf(const EffectSizePrior& prior, double delta) {
  switch (prior.truncation) {
    case Truncation::None:
      return prior_family_logpdf(prior, delta);
    case Truncation::PositiveOnly:
      if (delta < 0.0) return -std::numeric_limits<double>::infinity();
      return prior_family_logpdf(prior, delta) - prior_log_mass_positive(prior);
    case Truncation::NegativeOnly:
      if (delta > 0.0) return -std::numeric_limits<double>::infinity();
      return prior_family_logpdf(prior, delta) - prior_log_mass_negative(prior);
  }
  return prior_family_logpdf(prior, delta);
}

double BayesFactorResult::bf10() const { return std::exp(log_bf10); }

std::string to_string(Orientation orientation) {
  switch (orientation) {
    case Orientation::TwoSided:
      return "two-sided";
    case Orientation::PositiveVsNull:
      return "positive-vs-null";
    case Orientation::NegativeVsNull:
      return "negative-vs-null";
  }
  return "unknown";
}

std::string to_string(Design design) {
  return design == Design::OneSampleOrPaired ? "one" : "two";
}

std::string to_string(const EffectSizePrior& prior) {
  std::ostringstream out;
  out.precision(17);
  std::visit(Overloaded{[&out](const StudentTPrior& t) {
                          out << "t:" << t.location << ',' << t.scale << ',' << t.df;
                        },
                        [&out](const NormalPrior& n) {
                          out << "normal:" << n.mean << ',' << n.variance;
                        }},
             prior.family);
  if (prior.truncation == Truncation::PositiveOnly) out << "+trunc=pos";
  if (prior.truncation == Truncation::NegativeOnly) out << "+trunc=neg";
  return out.str();
}

}  // namespace infbf
