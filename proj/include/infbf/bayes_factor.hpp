#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "infbf/quadrature.hpp"
#include "infbf/signed_log.hpp"
#include "infbf/ttest.hpp"

namespace infbf {

/// Tolerances the engine passes to the quadrature module. Tighter than the
/// QuadratureConfig default because several results are compared across two
/// independent integration routes at 1e-8 relative.
QuadratureConfig engine_quadrature_config();

/// Raised when a one-sided test is requested on a side that carries
/// (numerically) no prior or posterior mass.
class DegenerateDirectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {
// Gamma((nu+1)/2) 1F1((nu+1)/2; 1/2; z^2/2) + sqrt(2) z Gamma((nu+2)/2) 1F1((nu+2)/2; 3/2; z^2/2),
// the shared shape of A + B and C + D.
SignedLogValue log_kummer_pair(double nu, double z);
// Same quantity through 2^{-(nu-1)/2} * Int_0^inf u^nu exp(-u^2/2 + z u) du.
double log_kummer_pair_by_integral(double nu, double z);
}  // namespace detail

/// A + B for a normal N(mu, g) component (g-integrand of the marginal likelihood).
SignedLogValue log_term_AB(const TTestSummary& summary, double mu, double g);

/// C + D at effect size delta (posterior numerator).
SignedLogValue log_term_CD(const TTestSummary& summary, double delta);

/// p(data | delta) / p(data | H0) = exp(-n_eff delta^2 / 2) (C + D) / Gamma((nu+1)/2).
double log_likelihood_ratio(const TTestSummary& summary, double delta);

/// Closed-form Bayes factor for a normal prior N(mean, variance) on delta.
BayesFactorResult bf10_normal_prior(const TTestSummary& summary, const NormalPrior& prior);

/// Bayes factor for a shifted and scaled t prior: the normal-prior numerator
/// integrated against the inverse-gamma mixing density of g.
BayesFactorResult bf10_t_prior(const TTestSummary& summary, const StudentTPrior& prior,
                               const QuadratureConfig& config = engine_quadrature_config());

/// Dispatches on family and truncation. A truncated prior is integrated
/// directly over its half-line of support (orientation set accordingly).
BayesFactorResult bayes_factor(const TTestSummary& summary, const EffectSizePrior& prior,
                               const QuadratureConfig& config = engine_quadrature_config());

/// Log posterior mass on one side of zero under an untruncated prior, given the
/// prior's two-sided log BF10 (the posterior's normaliser).
double log_posterior_side_mass(const TTestSummary& summary, const EffectSizePrior& prior,
                               double log_bf10, Orientation side,
                               const QuadratureConfig& config = engine_quadrature_config());

/// Directional Bayes factor BF+0 = BF+1 * BF10, with BF+1 the posterior-to-prior
/// mass ratio on the requested side. `prior` must be untruncated.
BayesFactorResult one_sided_bf(const TTestSummary& summary, const EffectSizePrior& prior,
                               Orientation direction,
                               const QuadratureConfig& config = engine_quadrature_config());

/// log BF_AB from log BF_A0 and log BF_B0.
double transitive_bf(double log_bf_a0, double log_bf_b0);

/// Posterior odds = prior odds * Bayes factor.
double posterior_odds(double prior_odds, double bf10);

struct CurvePoint {
  long n_per_group;
  double log_bf01_a;
  double log_bf01_b;
};

struct Bf01Curve {
  std::vector<CurvePoint> points;
  // First n at which prior a's BF01 overtakes prior b's after not exceeding it at n - 1.
  std::optional<long> crossover_n;
};

/// BF01 at t = 0 for two equal independent groups of n = n_min..n_max, the
/// largest evidence for H0 the design can deliver at each n.
Bf01Curve max_bf01_curve(const EffectSizePrior& prior_a, const EffectSizePrior& prior_b,
                         long n_min, long n_max,
                         const QuadratureConfig& config = engine_quadrature_config());

}  // namespace infbf
