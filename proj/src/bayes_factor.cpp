#include "infbf/bayes_factor.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "infbf/special_math.hpp"

namespace infbf {
namespace {

constexpr double kLn2 = std::numbers::ln2;
// Beyond this |B| / A the difference A - |B| is taken from the integral form.
constexpr double kCancellationRatio = 0.9;
const double kLogMinMass = std::log(1e-300);

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Gamma((nu+1)/2) (1 + t^2/nu)^{-(nu+1)/2}, the H0 side shared by every BF.
double log_null_term(const TTestSummary& s) {
  const double nu = s.df();
  const double t = s.t();
  return log_gamma(0.5 * (nu + 1.0)) - 0.5 * (nu + 1.0) * std::log1p(t * t / nu);
}

// Normal-prior numerator of BF10 as a function of the prior variance g.
double log_normal_numerator(const TTestSummary& s, double mu, double g) {
  const double n = s.n_eff();
  const double nu = s.df();
  const double t = s.t();
  const SignedLogValue ab = log_term_AB(s, mu, g);
  return -0.5 * std::log1p(n * g) - mu * mu / (2.0 * (1.0 / n + g)) -
         0.5 * (nu + 1.0) * std::log1p(t * t / (nu * (1.0 + n * g))) + ab.log_magnitude();
}

double typical_delta_scale(const TTestSummary& s, const EffectSizePrior& prior) {
  const double data_sd = 1.0 / std::sqrt(s.n_eff());
  return std::max({std::fabs(s.t()) * data_sd, data_sd, std::min(prior.spread(), 1.0),
                   std::fabs(prior.location())});
}

}  // namespace

QuadratureConfig engine_quadrature_config() {
  QuadratureConfig config;
  config.rel_tol = 1e-11;
  return config;
}

namespace detail {

double log_kummer_pair_by_integral(double nu, double z) {
  // Mode of u^nu exp(-u^2/2 + z u) written without cancellation for z < 0.
  const double root = std::sqrt(z * z + 4.0 * nu);
  const double u_star = z >= 0.0 ? 0.5 * (z + root) : 2.0 * nu / (root - z);
  const LogIntegrand integrand = [nu, z](double y) {
    const double u = std::exp(y);
    return (nu + 1.0) * y - 0.5 * u * u + z * u;
  };
  const QuadratureResult r =
      integrate_real_line_log(integrand, engine_quadrature_config(), std::log(u_star));
  return r.log_value - 0.5 * (nu - 1.0) * kLn2;
}

SignedLogValue log_kummer_pair(double nu, double z) {
  const double a1 = 0.5 * (nu + 1.0);
  const double a2 = 0.5 * (nu + 2.0);
  const double w = 0.5 * z * z;
  const double log_a = log_gamma(a1) + log_1f1(a1, 0.5, w);
  if (z == 0.0) return SignedLogValue::from_log(log_a);
  const double log_b = 0.5 * kLn2 + std::log(std::fabs(z)) + log_gamma(a2) + log_1f1(a2, 1.5, w);
  if (z > 0.0) return SignedLogValue::from_log(log_sum_exp(log_a, log_b));
  if (log_b - log_a <= std::log(kCancellationRatio)) {
    return SignedLogValue::from_log(log_diff_exp(log_a, log_b));
  }
  return SignedLogValue::from_log(log_kummer_pair_by_integral(nu, z));
}

}  // namespace detail

SignedLogValue log_term_AB(const TTestSummary& s, double mu, double g) {
  if (!(g > 0.0 && std::isfinite(g))) throw std::domain_error("log_term_AB: g must be positive");
  const double n = s.n_eff();
  const double nu = s.df();
  const double t = s.t();
  const double spread = (1.0 / n + g) * ((1.0 + n * g) * nu + t * t);
  const double z = mu * t / std::sqrt(spread);
  const SignedLogValue sum = detail::log_kummer_pair(nu, z);
  if (sum.sign() <= 0) throw std::logic_error("A + B must be positive");
  return sum;
}

SignedLogValue log_term_CD(const TTestSummary& s, double delta) {
  const double n = s.n_eff();
  const double nu = s.df();
  const double t = s.t();
  const double z = t * delta * std::sqrt(n / (nu + t * t));
  const SignedLogValue sum = detail::log_kummer_pair(nu, z);
  if (sum.sign() <= 0) throw std::logic_error("C + D must be positive");
  return sum;
}

double log_likelihood_ratio(const TTestSummary& s, double delta) {
  return -0.5 * s.n_eff() * delta * delta + log_term_CD(s, delta).log_magnitude() -
         log_gamma(0.5 * (s.df() + 1.0));
}

BayesFactorResult bf10_normal_prior(const TTestSummary& s, const NormalPrior& prior) {
  EffectSizePrior{prior}.validate();
  BayesFactorResult r;
  r.log_bf10 = log_normal_numerator(s, prior.mean, prior.variance) - log_null_term(s);
  return r;
}

BayesFactorResult bf10_t_prior(const TTestSummary& s, const StudentTPrior& prior,
                               const QuadratureConfig& config) {
  EffectSizePrior{prior}.validate();
  const double shape = 0.5 * prior.df;
  const double scale = 0.5 * prior.scale * prior.scale * prior.df;
  const LogIntegrand integrand = [&](double g) {
    return log_normal_numerator(s, prior.location, g) + inv_gamma_logpdf(g, shape, scale);
  };
  const QuadratureResult q = integrate_halfline_log(integrand, config, scale / (shape + 1.0));
  BayesFactorResult r;
  r.log_bf10 = q.log_value - log_null_term(s);
  r.diagnostics.g_integral_log = q.log_value;
  r.diagnostics.quadrature_error_estimate = q.error_estimate;
  return r;
}

double log_posterior_side_mass(const TTestSummary& s, const EffectSizePrior& prior,
                               double log_bf10, Orientation side, const QuadratureConfig& config) {
  if (side == Orientation::TwoSided) throw std::domain_error("side must be one-sided");
  const LogIntegrand integrand = [&](double delta) {
    return log_likelihood_ratio(s, delta) + prior_family_logpdf(prior, delta) - log_bf10;
  };
  const double hint = typical_delta_scale(s, prior);
  const QuadratureResult q = side == Orientation::PositiveVsNull
                                 ? integrate_upper_tail_log(integrand, 0.0, config, hint)
                                 : integrate_lower_tail_log(integrand, 0.0, config, hint);
  return q.log_value;
}

BayesFactorResult bayes_factor(const TTestSummary& s, const EffectSizePrior& prior,
                               const QuadratureConfig& config) {
  prior.validate();
  if (prior.truncation == Truncation::None) {
    return std::visit(
        Overloaded{[&](const StudentTPrior& t) { return bf10_t_prior(s, t, config); },
                   [&](const NormalPrior& n) { return bf10_normal_prior(s, n); }},
        prior.family);
  }

  const bool positive = prior.truncation == Truncation::PositiveOnly;
  const EffectSizePrior family = prior.untruncated();
  const double log_prior_mass =
      positive ? prior_log_mass_positive(family) : prior_log_mass_negative(family);
  if (!(log_prior_mass > kLogMinMass)) {
    throw DegenerateDirectionError("truncated prior has no mass on the requested side");
  }
  const Orientation side = positive ? Orientation::PositiveVsNull : Orientation::NegativeVsNull;
  // Posterior side mass with log_bf10 = 0 is the un-normalised integral itself.
  const double log_integral = log_posterior_side_mass(s, family, 0.0, side, config);
  BayesFactorResult r;
  r.log_bf10 = log_integral - log_prior_mass;
  r.orientation = side;
  return r;
}

BayesFactorResult one_sided_bf(const TTestSummary& s, const EffectSizePrior& prior,
                               Orientation direction, const QuadratureConfig& config) {
  if (prior.truncation != Truncation::None) {
    throw std::domain_error("one_sided_bf expects an untruncated prior");
  }
  if (direction == Orientation::TwoSided) {
    throw std::domain_error("one_sided_bf needs a positive or negative direction");
  }
  const double log_prior_mass = direction == Orientation::PositiveVsNull
                                    ? prior_log_mass_positive(prior)
                                    : prior_log_mass_negative(prior);
  if (!(log_prior_mass > kLogMinMass)) {
    throw DegenerateDirectionError("prior mass on the requested side is below 1e-300");
  }
  BayesFactorResult two_sided = bayes_factor(s, prior, config);
  const double log_post_mass =
      log_posterior_side_mass(s, prior, two_sided.log_bf10, direction, config);
  if (!(log_post_mass > kLogMinMass)) {
    throw DegenerateDirectionError("posterior mass on the requested side is below 1e-300");
  }
  BayesFactorResult r = two_sided;
  r.log_bf10 = (log_post_mass - log_prior_mass) + two_sided.log_bf10;
  r.orientation = direction;
  return r;
}

double transitive_bf(double log_bf_a0, double log_bf_b0) { return log_bf_a0 - log_bf_b0; }

double posterior_odds(double prior_odds, double bf10) {
  if (!(prior_odds > 0.0) || !(bf10 > 0.0)) {
    throw std::domain_error("posterior_odds: prior odds and Bayes factor must be positive");
  }
  return prior_odds * bf10;
}

Bf01Curve max_bf01_curve(const EffectSizePrior& prior_a, const EffectSizePrior& prior_b,
                         long n_min, long n_max, const QuadratureConfig& config) {
  if (n_min < 2 || n_max > 1'000'000 || n_min > n_max) {
    throw std::domain_error("max_bf01_curve: range must satisfy 2 <= n_min <= n_max <= 1e6");
  }
  Bf01Curve curve;
  curve.points.reserve(static_cast<std::size_t>(n_max - n_min + 1));
  for (long n = n_min; n <= n_max; ++n) {
    const TTestSummary s = TTestSummary::two_sample(0.0, n, n);
    const double a = -bayes_factor(s, prior_a, config).log_bf10;
    const double b = -bayes_factor(s, prior_b, config).log_bf10;
    const bool reversed_before = !curve.points.empty() &&
                                 curve.points.back().log_bf01_a > curve.points.back().log_bf01_b;
    curve.points.push_back({n, a, b});
    if (!curve.crossover_n && a > b && curve.points.size() > 1 && !reversed_before) {
      curve.crossover_n = n;
    }
  }
  return curve;
}

}  // namespace infbf
