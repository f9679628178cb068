#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "infbf/posterior.hpp"
#include "infbf/ttest.hpp"

namespace infbf {

/// Raised when an elicitation sheet cannot identify a location/scale family
/// (fewer than three bins with chips).
class InsufficientInformationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Chips placed by an expert over a grid of effect-size bins.
struct ElicitationSheet {
  std::vector<double> bin_edges;  // m + 1 strictly increasing edges
  std::vector<long> chip_counts;  // m non-negative counts
  std::optional<Truncation> direction_hint;

  void validate() const;
};

struct PercentileFeedback {
  double p33 = 0.0;
  double p50 = 0.0;
  double p66 = 0.0;
};

struct FitResult {
  EffectSizePrior prior = EffectSizePrior::default_cauchy();
  double loss = 0.0;
  PercentileFeedback percentile_feedback;
  bool converged = false;
  // df was clamped to 1 or 500.
  bool at_df_bound = false;

  const StudentTPrior& t() const { return std::get<StudentTPrior>(prior.family); }
};

inline constexpr double kMinFitDf = 1.0;
inline constexpr double kMaxFitDf = 500.0;

/// Least squares between chip proportions and the fitted bin probabilities.
/// Leave `df` empty to fit it; a direction hint fits the truncated family.
FitResult fit_t_to_histogram(const ElicitationSheet& sheet, std::optional<double> df = std::nullopt);

/// Location is the median; scale minimises the squared error of the 33% and 66% quantiles.
FitResult fit_t_to_quantiles(double p33, double p50, double p66, double df);

/// Integrated squared error between a tabulated density and the t family.
FitResult fit_t_to_density_grid(const std::vector<double>& delta,
                                const std::vector<double>& log_density);
FitResult fit_t_to_density_grid(const PosteriorGrid& grid);

struct ReplicationChainResult {
  FitResult fitted_prior;
  double log_bf_F0 = 0.0;
  double log_bf_10_default = 0.0;
  double log_bf_F1 = 0.0;
};

/// Posterior of the original study, fitted by a t, used as the prior for the
/// replication and compared against the default Cauchy analysis.
ReplicationChainResult replication_chain(const TTestSummary& original,
                                         const EffectSizePrior& initial_prior,
                                         const TTestSummary& replication);

}  // namespace infbf
