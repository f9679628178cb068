#include "infbf/elicitation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "infbf/bayes_factor.hpp"
#include "infbf/special_math.hpp"

namespace infbf {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::array<double, 3> kFeedbackLevels{0.33, 0.50, 0.66};

// ---- simplex search -------------------------------------------------------

struct Box {
  std::vector<double> lower;
  std::vector<double> upper;

  void clamp(std::vector<double>& x) const {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lower[i], upper[i]);
  }
};

struct SimplexResult {
  std::vector<double> x;
  double value = kInf;
  bool converged = false;
};

// Nelder-Mead with the standard coefficients. Vertices are clamped into the
// box so that a flat direction beyond a bound cannot keep the simplex wide.
SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          std::vector<double> start, const std::vector<double>& step,
                          const Box& box, int max_iter = 4000) {
  const std::size_t n = start.size();
  box.clamp(start);
  std::vector<std::vector<double>> pts(n + 1, start);
  for (std::size_t i = 0; i < n; ++i) {
    pts[i + 1][i] += step[i];
    box.clamp(pts[i + 1]);
    if (pts[i + 1][i] == start[i]) pts[i + 1][i] -= step[i];  // start sat on an upper bound
  }
  std::vector<double> vals(n + 1);
  for (std::size_t i = 0; i <= n; ++i) vals[i] = f(pts[i]);

  std::vector<std::size_t> order(n + 1);
  auto point_along = [&](const std::vector<double>& centroid, const std::vector<double>& worst,
                         double coef) {
    std::vector<double> p(n);
    for (std::size_t j = 0; j < n; ++j) p[j] = centroid[j] + coef * (worst[j] - centroid[j]);
    box.clamp(p);
    return p;
  };

  SimplexResult result;
  for (int iter = 0; iter < max_iter; ++iter) {
    for (std::size_t i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n - 1];

    double x_spread = 0.0;
    double f_spread = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t j = 0; j < n; ++j) x_spread = std::max(x_spread, std::fabs(pts[i][j] - pts[best][j]));
      f_spread = std::max(f_spread, std::fabs(vals[i] - vals[best]));
    }
    if (x_spread <= 1e-10 && f_spread <= 1e-16 + 1e-12 * std::fabs(vals[best])) {
      result.converged = true;
      break;
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[i][j] / static_cast<double>(n);
    }

    const auto reflected = point_along(centroid, pts[worst], -1.0);
    const double f_reflected = f(reflected);
    if (f_reflected < vals[best]) {
      const auto expanded = point_along(centroid, pts[worst], -2.0);
      const double f_expanded = f(expanded);
      if (f_expanded < f_reflected) {
        pts[worst] = expanded;
        vals[worst] = f_expanded;
      } else {
        pts[worst] = reflected;
        vals[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < vals[second]) {
      pts[worst] = reflected;
      vals[worst] = f_reflected;
      continue;
    }
    const bool outside = f_reflected < vals[worst];
    const auto contracted = point_along(centroid, pts[worst], outside ? -0.5 : 0.5);
    const double f_contracted = f(contracted);
    if (f_contracted < (outside ? f_reflected : vals[worst])) {
      pts[worst] = contracted;
      vals[worst] = f_contracted;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t j = 0; j < n; ++j) pts[i][j] = pts[best][j] + 0.5 * (pts[i][j] - pts[best][j]);
      vals[i] = f(pts[i]);
    }
  }
  const auto best = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
  result.x = pts[best];
  result.value = vals[best];
  return result;
}

// ---- t family helpers -----------------------------------------------------

struct TParams {
  double location;
  double scale;
  double df;
};

// Parameter vector is (location, log scale[, log df]).
TParams unpack(const std::vector<double>& x, std::optional<double> fixed_df) {
  if (fixed_df) return {x[0], std::exp(x[1]), *fixed_df};
  double df = std::clamp(std::exp(x[2]), kMinFitDf, kMaxFitDf);
  // exp(log 500) need not round-trip; a vertex sitting on the bound means the bound.
  if (df > kMaxFitDf * (1.0 - 1e-12)) df = kMaxFitDf;
  if (df < kMinFitDf * (1.0 + 1e-12)) df = kMinFitDf;
  return {x[0], std::exp(x[1]), df};
}

Box parameter_box(bool free_df) {
  Box box{{-kInf, std::log(1e-8)}, {kInf, std::log(1e8)}};
  if (free_df) {
    box.lower.push_back(std::log(kMinFitDf));
    box.upper.push_back(std::log(kMaxFitDf));
  }
  return box;
}

// Truncated-family CDF; for no truncation this is the plain t CDF.
double family_cdf(double x, const TParams& p, Truncation trunc) {
  switch (trunc) {
    case Truncation::None:
      return student_t_cdf(x, p.location, p.scale, p.df);
    case Truncation::PositiveOnly: {
      if (x <= 0.0) return 0.0;
      const double mass = student_t_sf(0.0, p.location, p.scale, p.df);
      return (student_t_sf(0.0, p.location, p.scale, p.df) - student_t_sf(x, p.location, p.scale, p.df)) / mass;
    }
    case Truncation::NegativeOnly: {
      if (x >= 0.0) return 1.0;
      return student_t_cdf(x, p.location, p.scale, p.df) / student_t_cdf(0.0, p.location, p.scale, p.df);
    }
  }
  return student_t_cdf(x, p.location, p.scale, p.df);
}

double family_quantile(double q, const TParams& p, Truncation trunc) {
  switch (trunc) {
    case Truncation::None:
      return student_t_quantile(q, p.location, p.scale, p.df);
    case Truncation::PositiveOnly: {
      const double lower = student_t_cdf(0.0, p.location, p.scale, p.df);
      return student_t_quantile(lower + q * (1.0 - lower), p.location, p.scale, p.df);
    }
    case Truncation::NegativeOnly: {
      const double upper = student_t_cdf(0.0, p.location, p.scale, p.df);
      return student_t_quantile(q * upper, p.location, p.scale, p.df);
    }
  }
  return student_t_quantile(q, p.location, p.scale, p.df);
}

FitResult make_result(const TParams& p, Truncation trunc, double loss, bool converged) {
  FitResult r;
  r.prior = EffectSizePrior::student_t(p.location, p.scale, p.df, trunc);
  r.loss = loss;
  r.converged = converged;
  r.at_df_bound = p.df <= kMinFitDf || p.df >= kMaxFitDf;
  r.percentile_feedback = {family_quantile(kFeedbackLevels[0], p, trunc),
                           family_quantile(kFeedbackLevels[1], p, trunc),
                           family_quantile(kFeedbackLevels[2], p, trunc)};
  return r;
}

struct Start {
  double location_shift;  // in units of the sd
  double scale_factor;
  double df;
};

// Perturbations of the moment-matched start; the df column spans the flat valley.
constexpr std::array<Start, 5> kRestarts{{
    {0.0, 1.0, 30.0},
    {0.1, 0.9, 5.0},
    {-0.1, 1.1, 100.0},
    {0.0, 0.8, 3.0},
    {0.05, 1.2, 10.0},
}};

// Runs every restart and keeps the lowest loss, ties broken by parameter order.
SimplexResult multistart(const std::function<double(const std::vector<double>&)>& loss,
                         double mean, double sd, std::optional<double> fixed_df) {
  const bool free_df = !fixed_df.has_value();
  const Box box = parameter_box(free_df);
  SimplexResult best;
  for (const Start& s : kRestarts) {
    const double df = fixed_df.value_or(s.df);
    // Match the t variance to sd^2 where it exists.
    const double t_scale = df > 2.0 ? sd * std::sqrt((df - 2.0) / df) : sd * 0.5;
    std::vector<double> x0{mean + s.location_shift * sd, std::log(t_scale * s.scale_factor)};
    std::vector<double> step{0.1 * sd, 0.1};
    if (free_df) {
      x0.push_back(std::log(df));
      step.push_back(0.5);
    }
    SimplexResult r = nelder_mead(loss, x0, step, box);
    if (r.value < best.value || (r.value == best.value && r.x < best.x)) best = std::move(r);
  }
  return best;
}

std::vector<double> moments(const std::vector<double>& x, const std::vector<double>& w) {
  double total = 0.0;
  double mean = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    total += w[i];
    mean += w[i] * x[i];
  }
  mean /= total;
  double var = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) var += w[i] * (x[i] - mean) * (x[i] - mean);
  return {mean, std::sqrt(var / total)};
}

}  // namespace

void ElicitationSheet::validate() const {
  if (bin_edges.size() < 2) throw std::domain_error("bin_edges: need at least two edges");
  if (chip_counts.size() + 1 != bin_edges.size()) {
    throw std::domain_error("chip_counts: length must be one less than bin_edges");
  }
  for (std::size_t i = 0; i < bin_edges.size(); ++i) {
    if (!std::isfinite(bin_edges[i])) throw std::domain_error("bin_edges: values must be finite");
    if (i > 0 && !(bin_edges[i] > bin_edges[i - 1])) {
      throw std::domain_error("bin_edges: must be strictly increasing");
    }
  }
  long total = 0;
  for (long c : chip_counts) {
    if (c < 0) throw std::domain_error("chip_counts: counts must be non-negative");
    total += c;
  }
  if (total < 1) throw InsufficientInformationError("sheet has no chips");
}

FitResult fit_t_to_histogram(const ElicitationSheet& sheet, std::optional<double> df) {
  sheet.validate();
  if (df && !(*df >= kMinFitDf && *df <= kMaxFitDf)) {
    throw std::domain_error("df must lie in [1, 500]");
  }
  const auto nonempty = std::count_if(sheet.chip_counts.begin(), sheet.chip_counts.end(),
                                      [](long c) { return c > 0; });
  if (nonempty < 3) {
    throw InsufficientInformationError("at least 3 bins must hold chips to fit a t distribution");
  }

  const std::size_t m = sheet.chip_counts.size();
  double total = 0.0;
  for (long c : sheet.chip_counts) total += static_cast<double>(c);
  std::vector<double> proportion(m);
  std::vector<double> mids(m);
  for (std::size_t i = 0; i < m; ++i) {
    proportion[i] = static_cast<double>(sheet.chip_counts[i]) / total;
    mids[i] = 0.5 * (sheet.bin_edges[i] + sheet.bin_edges[i + 1]);
  }
  const Truncation trunc = sheet.direction_hint.value_or(Truncation::None);

  const auto loss = [&](const std::vector<double>& x) {
    const TParams p = unpack(x, df);
    double sum = 0.0;
    double prev = family_cdf(sheet.bin_edges[0], p, trunc);
    for (std::size_t i = 0; i < m; ++i) {
      const double next = family_cdf(sheet.bin_edges[i + 1], p, trunc);
      const double r = (next - prev) - proportion[i];
      sum += r * r;
      prev = next;
    }
    return sum;
  };

  const auto mo = moments(mids, proportion);
  const double width = sheet.bin_edges.back() - sheet.bin_edges.front();
  const double sd = std::max(mo[1], 1e-3 * width);
  const SimplexResult best = multistart(loss, mo[0], sd, df);
  return make_result(unpack(best.x, df), trunc, best.value, best.converged);
}

FitResult fit_t_to_quantiles(double p33, double p50, double p66, double df) {
  if (!(std::isfinite(p33) && std::isfinite(p50) && std::isfinite(p66))) {
    throw std::domain_error("quantiles must be finite");
  }
  if (!(p33 < p50 && p50 < p66)) throw std::domain_error("quantiles must satisfy p33 < p50 < p66");
  if (!(df >= kMinFitDf && df <= kMaxFitDf)) throw std::domain_error("df must lie in [1, 500]");

  const double z33 = student_t_quantile(kFeedbackLevels[0], 0.0, 1.0, df);
  const double z66 = student_t_quantile(kFeedbackLevels[2], 0.0, 1.0, df);
  const double d33 = p33 - p50;
  const double d66 = p66 - p50;
  const double scale = (z33 * d33 + z66 * d66) / (z33 * z33 + z66 * z66);
  const double r33 = scale * z33 - d33;
  const double r66 = scale * z66 - d66;
  return make_result({p50, scale, df}, Truncation::None, r33 * r33 + r66 * r66, true);
}

FitResult fit_t_to_density_grid(const std::vector<double>& delta,
                                const std::vector<double>& log_density) {
  if (delta.size() != log_density.size() || delta.size() < 3) {
    throw std::domain_error("density grid: need matching delta and density arrays of length >= 3");
  }
  for (std::size_t i = 1; i < delta.size(); ++i) {
    if (!(delta[i] > delta[i - 1])) throw std::domain_error("density grid: delta must increase");
  }
  const double mass = trapezoid_mass(delta, log_density);
  if (!(std::fabs(mass - 1.0) <= 1e-4)) {
    throw std::domain_error("density grid is not normalised (trapezoid mass " +
                            std::to_string(mass) + ")");
  }

  const std::size_t k = delta.size();
  std::vector<double> density(k);
  for (std::size_t i = 0; i < k; ++i) density[i] = std::exp(log_density[i]);

  const auto loss = [&](const std::vector<double>& x) {
    const TParams p = unpack(x, std::nullopt);
    const double half = 0.5 * (p.df + 1.0);
    const double norm = log_gamma(half) - log_gamma(0.5 * p.df) -
                        0.5 * std::log(p.df * std::numbers::pi) - std::log(p.scale);
    double sum = 0.0;
    double prev = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const double z = (delta[i] - p.location) / p.scale;
      const double r = density[i] - std::exp(norm - half * std::log1p(z * z / p.df));
      const double sq = r * r;
      if (i > 0) sum += 0.5 * (delta[i] - delta[i - 1]) * (sq + prev);
      prev = sq;
    }
    return sum;
  };

  // Moments of the tabulated density.
  std::vector<double> weight(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double left = i > 0 ? delta[i] - delta[i - 1] : 0.0;
    const double right = i + 1 < k ? delta[i + 1] - delta[i] : 0.0;
    weight[i] = 0.5 * (left + right) * density[i];
  }
  const auto mo = moments(delta, weight);
  const SimplexResult best = multistart(loss, mo[0], mo[1], std::nullopt);
  return make_result(unpack(best.x, std::nullopt), Truncation::None, best.value, best.converged);
}

FitResult fit_t_to_density_grid(const PosteriorGrid& grid) {
  return fit_t_to_density_grid(grid.delta_values, grid.log_density);
}

ReplicationChainResult replication_chain(const TTestSummary& original,
                                         const EffectSizePrior& initial_prior,
                                         const TTestSummary& replication) {
  const PosteriorGrid grid = posterior_summary(original, initial_prior);
  ReplicationChainResult r;
  r.fitted_prior = fit_t_to_density_grid(grid);
  r.log_bf_F0 = bayes_factor(replication, r.fitted_prior.prior).log_bf10;
  r.log_bf_10_default = bayes_factor(replication, EffectSizePrior::default_cauchy()).log_bf10;
  r.log_bf_F1 = transitive_bf(r.log_bf_F0, r.log_bf_10_default);
  return r;
}

}  // namespace infbf
