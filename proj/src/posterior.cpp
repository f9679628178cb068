#include "infbf/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "infbf/signed_log.hpp"

namespace infbf {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Normal approximation to the posterior (prior precision plus data precision),
// only used to place windows and seed searches.
struct RoughShape {
  double center;
  double sd;
};

RoughShape rough_shape(const TTestSummary& s, const EffectSizePrior& prior) {
  const double prior_precision = 1.0 / (prior.spread() * prior.spread());
  const double data_precision = s.n_eff();
  const double data_center = s.t() / std::sqrt(s.n_eff());
  const double precision = prior_precision + data_precision;
  return {(prior_precision * prior.location() + data_precision * data_center) / precision,
          1.0 / std::sqrt(precision)};
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> x(n);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) x[i] = lo + step * static_cast<double>(i);
  x.back() = hi;
  return x;
}

}  // namespace

Posterior::Posterior(const TTestSummary& summary, const EffectSizePrior& prior,
                     const QuadratureConfig& config)
    : summary_(summary), prior_(prior), config_(config), bf_(infbf::bayes_factor(summary, prior, config)) {}

double Posterior::log_density(double delta) const {
  const double lp = prior_logpdf(prior_, delta);
  if (lp == -kInf) return -kInf;
  return log_likelihood_ratio(summary_, delta) + lp - bf_.log_bf10;
}

double Posterior::support_lower() const noexcept {
  return prior_.truncation == Truncation::PositiveOnly ? 0.0 : -kInf;
}

double Posterior::support_upper() const noexcept {
  return prior_.truncation == Truncation::NegativeOnly ? 0.0 : kInf;
}

double Posterior::typical_scale() const noexcept {
  const RoughShape shape = rough_shape(summary_, prior_);
  return std::max(shape.sd, std::fabs(shape.center));
}

double Posterior::log_mass(double lo, double hi) const {
  lo = std::max(lo, support_lower());
  hi = std::min(hi, support_upper());
  if (!(lo < hi)) return -kInf;
  const LogIntegrand f = [this](double d) { return log_density(d); };
  const double hint = typical_scale();
  const bool lo_finite = std::isfinite(lo);
  const bool hi_finite = std::isfinite(hi);
  if (lo_finite && hi_finite) return integrate_interval_log(f, lo, hi, config_).log_value;
  if (lo_finite) return integrate_upper_tail_log(f, lo, config_, hint).log_value;
  if (hi_finite) return integrate_lower_tail_log(f, hi, config_, hint).log_value;
  const double split = rough_shape(summary_, prior_).center;
  return log_sum_exp(integrate_lower_tail_log(f, split, config_, hint).log_value,
                     integrate_upper_tail_log(f, split, config_, hint).log_value);
}

double Posterior::cdf(double delta) const {
  return std::min(1.0, std::exp(log_mass(-kInf, delta)));
}

double posterior_log_density(const TTestSummary& summary, const EffectSizePrior& prior,
                             double delta) {
  return Posterior(summary, prior).log_density(delta);
}

double trapezoid_mass(const std::vector<double>& x, const std::vector<double>& log_density) {
  double mass = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    mass += 0.5 * (x[i] - x[i - 1]) * (std::exp(log_density[i]) + std::exp(log_density[i - 1]));
  }
  return mass;
}

double posterior_quantile(const Posterior& posterior, double p, double lo, double hi) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("posterior_quantile: p must lie in (0, 1)");
  const double width = std::max(hi - lo, posterior.typical_scale() * 1e-3);
  for (int i = 0; i < 60 && posterior.cdf(lo) > p; ++i) {
    lo -= width * std::ldexp(1.0, i);
    lo = std::max(lo, posterior.support_lower());
  }
  for (int i = 0; i < 60 && posterior.cdf(hi) < p; ++i) {
    hi += width * std::ldexp(1.0, i);
    hi = std::min(hi, posterior.support_upper());
  }

  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 100; ++it) {
    const double f = posterior.cdf(x) - p;
    if (std::fabs(f) < 1e-13) break;
    (f > 0.0 ? hi : lo) = x;
    const double density = std::exp(posterior.log_density(x));
    double next = density > 0.0 ? x - f / density : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const bool done = std::fabs(next - x) < 1e-12 * std::max(1.0, std::fabs(x));
    x = next;
    if (done || hi - lo < 1e-14 * std::max(1.0, std::fabs(x))) break;
  }
  return x;
}

PosteriorGrid posterior_summary(const TTestSummary& summary, const EffectSizePrior& prior,
                                const GridConfig& config) {
  return posterior_summary(Posterior(summary, prior, config.quadrature), config);
}

PosteriorGrid posterior_summary(const Posterior& posterior, const GridConfig& config) {
  if (config.points < 3) throw std::domain_error("posterior_summary: need at least 3 grid points");
  const TTestSummary& s = posterior.summary();
  const EffectSizePrior& prior = posterior.prior();
  const RoughShape shape = rough_shape(s, prior);

  const double half = std::max(10.0 * prior.spread(), 10.0 / std::sqrt(s.n_eff()));
  double lo = std::min(prior.location() - half, shape.center - 10.0 * shape.sd);
  double hi = std::max(prior.location() + half, shape.center + 10.0 * shape.sd);
  lo = std::max(lo, posterior.support_lower());
  hi = std::min(hi, posterior.support_upper());
  if (!(lo < hi)) {
    // Window fell entirely outside a truncated support.
    lo = std::max(posterior.support_lower(), -half);
    hi = std::min(posterior.support_upper(), half);
  }

  auto tabulate = [&posterior](const std::vector<double>& xs) {
    std::vector<double> ld(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) ld[i] = posterior.log_density(xs[i]);
    return ld;
  };

  // Widen until both free edges are negligible, then zoom onto the bulk.
  constexpr std::size_t kProbePoints = 401;
  std::vector<double> xs;
  std::vector<double> ld;
  for (int doubling = 0;; ++doubling) {
    xs = linspace(lo, hi, kProbePoints);
    ld = tabulate(xs);
    const double peak = *std::max_element(ld.begin(), ld.end());
    const bool lo_ok = lo <= posterior.support_lower() || ld.front() < peak - config.tail_log_drop;
    const bool hi_ok = hi >= posterior.support_upper() || ld.back() < peak - config.tail_log_drop;
    if ((lo_ok && hi_ok) || doubling >= config.max_doublings) break;
    const double mid = 0.5 * (lo + hi);
    if (!lo_ok) lo = std::max(mid - 2.0 * (mid - lo), posterior.support_lower());
    if (!hi_ok) hi = std::min(mid + 2.0 * (hi - mid), posterior.support_upper());
  }
  {
    const double peak = *std::max_element(ld.begin(), ld.end());
    std::size_t first = 0;
    std::size_t last = xs.size() - 1;
    while (first + 1 < xs.size() && ld[first + 1] < peak - config.tail_log_drop) ++first;
    while (last > first + 1 && ld[last - 1] < peak - config.tail_log_drop) --last;
    lo = xs[first];
    hi = xs[last];
  }

  PosteriorGrid grid;
  grid.delta_values = linspace(lo, hi, config.points);
  grid.log_density = tabulate(grid.delta_values);
  grid.normalization_check = trapezoid_mass(grid.delta_values, grid.log_density);

  // Bracket each quantile from the cumulative trapezoid table, then refine.
  std::vector<double> cumulative(grid.delta_values.size(), 0.0);
  for (std::size_t i = 1; i < cumulative.size(); ++i) {
    cumulative[i] = cumulative[i - 1] + 0.5 * (grid.delta_values[i] - grid.delta_values[i - 1]) *
                                            (std::exp(grid.log_density[i]) +
                                             std::exp(grid.log_density[i - 1]));
  }
  auto quantile = [&](double p) {
    const double target = p * cumulative.back();
    const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), target);
    const auto idx = static_cast<std::size_t>(std::distance(cumulative.begin(), it));
    const std::size_t a = idx >= 3 ? idx - 3 : 0;
    const std::size_t b = std::min(idx + 2, grid.delta_values.size() - 1);
    return posterior_quantile(posterior, p, grid.delta_values[a], grid.delta_values[b]);
  };
  grid.summary.median = quantile(0.5);
  grid.summary.ci_lower_95 = quantile(0.025);
  grid.summary.ci_upper_95 = quantile(0.975);
  return grid;
}

}  // namespace infbf
