#pragma once

#include <cstddef>
#include <vector>

#include "infbf/bayes_factor.hpp"
#include "infbf/quadrature.hpp"
#include "infbf/ttest.hpp"

namespace infbf {

/// Marginal posterior of the effect size under H1 for one (summary, prior) pair.
///
/// The normaliser (the prior's Bayes factor) is computed once in the
/// constructor; the object is immutable afterwards and safe to share across
/// threads.
class Posterior {
 public:
  Posterior(const TTestSummary& summary, const EffectSizePrior& prior,
            const QuadratureConfig& config = engine_quadrature_config());

  const TTestSummary& summary() const noexcept { return summary_; }
  const EffectSizePrior& prior() const noexcept { return prior_; }
  const BayesFactorResult& bayes_factor() const noexcept { return bf_; }

  /// Normalised log density; -inf outside a truncated prior's support.
  double log_density(double delta) const;

  /// Log posterior mass on [lo, hi]; either bound may be infinite.
  double log_mass(double lo, double hi) const;
  double cdf(double delta) const;

  double support_lower() const noexcept;
  double support_upper() const noexcept;
  // Rough scale of posterior variation, used to seed integrations and grids.
  double typical_scale() const noexcept;

 private:
  TTestSummary summary_;
  EffectSizePrior prior_;
  QuadratureConfig config_;
  BayesFactorResult bf_;
};

double posterior_log_density(const TTestSummary& summary, const EffectSizePrior& prior,
                             double delta);

struct GridConfig {
  std::size_t points = 2001;
  // Window edges must sit this many log units below the peak density.
  double tail_log_drop = 50.0;
  int max_doublings = 16;
  QuadratureConfig quadrature = engine_quadrature_config();
};

struct PosteriorSummary {
  double median = 0.0;
  double ci_lower_95 = 0.0;
  double ci_upper_95 = 0.0;
};

struct PosteriorGrid {
  std::vector<double> delta_values;
  std::vector<double> log_density;
  PosteriorSummary summary;
  // Trapezoid mass of the tabulated density.
  double normalization_check = 0.0;
};

/// Tabulate the posterior and report its median and central 95% interval.
/// Quantiles come from inverting the quadrature CDF, not the trapezoid table.
PosteriorGrid posterior_summary(const TTestSummary& summary, const EffectSizePrior& prior,
                                const GridConfig& config = {});
PosteriorGrid posterior_summary(const Posterior& posterior, const GridConfig& config = {});

/// Quantile of the posterior by CDF inversion inside [lo, hi].
double posterior_quantile(const Posterior& posterior, double p, double lo, double hi);

double trapezoid_mass(const std::vector<double>& x, const std::vector<double>& log_density);

}  // namespace infbf
