#pragma once

#include <optional>

#include <json.hpp>

#include "infbf/elicitation.hpp"
#include "infbf/ttest.hpp"

namespace infbf::service {

inline constexpr int kSchemaVersion = 1;
// Linear Bayes factors beyond e^700 (or below e^-700) are reported on the log scale only.
inline constexpr double kMaxLinearLog = 700.0;

struct AnalysisRequest {
  TTestSummary summary = TTestSummary::one_sample(0.0, 2);
  EffectSizePrior prior = EffectSizePrior::default_cauchy();
  std::optional<Orientation> direction;
  bool compare_default = false;
  bool grid = false;
};

/// Builds a request from the HTTP/JSON form:
/// {"design", "t", "n1", "n2"?, "prior"? (default Cauchy), "direction"?, "compare_default"?, "grid"?}.
AnalysisRequest analysis_request_from_json(const nlohmann::json& j);

/// The analysis report shared by the CLI and the HTTP service.
nlohmann::json analyze(const AnalysisRequest& request);

/// {"log": x, "value": e^x | null, "log_only": bool}
nlohmann::json bf_to_json(double log_bf);

nlohmann::json fit_result_to_json(const FitResult& fit);
nlohmann::json chain_result_to_json(const ReplicationChainResult& chain);

}  // namespace infbf::service
