#include "infbf/service/report.hpp"

#include <cmath>

#include "infbf/bayes_factor.hpp"
#include "infbf/posterior.hpp"
#include "infbf/service/errors.hpp"
#include "infbf/service/prior_spec.hpp"

namespace infbf::service {
namespace {

using nlohmann::json;

const json& require(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) throw SchemaError(key, "missing");
  return j[key];
}

double require_number(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_number()) throw SchemaError(key, "must be a number");
  return v.get<double>();
}

long require_count(const json& v, const char* key) {
  if (!v.is_number_integer()) throw SchemaError(key, "must be an integer");
  return v.get<long>();
}

bool optional_flag(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return false;
  if (!j[key].is_boolean()) throw SchemaError(key, "must be true or false");
  return j[key].get<bool>();
}

// BF for the request's prior in the requested orientation.
double directional_log_bf(const TTestSummary& s, const EffectSizePrior& prior,
                          std::optional<Orientation> direction) {
  if (direction && *direction != Orientation::TwoSided) return one_sided_bf(s, prior, *direction).log_bf10;
  return bayes_factor(s, prior).log_bf10;
}

}  // namespace

AnalysisRequest analysis_request_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("body", "must be a JSON object");
  AnalysisRequest r;
  const Design design = [&] {
    const json& d = require(j, "design");
    if (!d.is_string()) throw SchemaError("design", "must be 'one' or 'two'");
    return parse_design(d.get<std::string>());
  }();
  const double t = require_number(j, "t");
  const long n1 = require_count(require(j, "n1"), "n1");
  if (design == Design::OneSampleOrPaired) {
    if (j.contains("n2") && !j["n2"].is_null()) {
      throw SchemaError("n2", "must be empty for design 'one'");
    }
    r.summary = TTestSummary::one_sample(t, n1);
  } else {
    const long n2 = require_count(require(j, "n2"), "n2");
    r.summary = TTestSummary::two_sample(t, n1, n2);
  }
  if (j.contains("prior") && !j["prior"].is_null()) r.prior = prior_from_json(j["prior"]);
  if (j.contains("direction") && !j["direction"].is_null()) {
    if (!j["direction"].is_string()) throw SchemaError("direction", "must be 'two', 'pos' or 'neg'");
    const Orientation side = parse_side(j["direction"].get<std::string>(), "direction");
    if (side != Orientation::TwoSided) r.direction = side;
  }
  if (r.direction && r.prior.truncation != Truncation::None) {
    throw SchemaError("direction", "a truncated prior is already directional; drop one of the two");
  }
  r.compare_default = optional_flag(j, "compare_default");
  r.grid = optional_flag(j, "grid");
  return r;
}

json bf_to_json(double log_bf) {
  const bool log_only = !(std::fabs(log_bf) <= kMaxLinearLog);
  json j = {{"log", log_bf}, {"log_only", log_only}};
  j["value"] = log_only ? json(nullptr) : json(std::exp(log_bf));
  return j;
}

json analyze(const AnalysisRequest& request) {
  const TTestSummary& s = request.summary;
  json r;
  r["schema_version"] = kSchemaVersion;
  r["input"] = {{"design", to_string(s.design())},
                {"t", s.t()},
                {"n1", s.n1()},
                {"n2", s.n2() ? json(*s.n2()) : json(nullptr)},
                {"df", s.df()},
                {"n_eff", s.n_eff()}};
  r["prior"] = prior_to_json(request.prior);

  const Posterior posterior(s, request.prior);
  r["bf10"] = bf_to_json(posterior.bayes_factor().log_bf10);
  r["orientation"] = to_string(posterior.bayes_factor().orientation);
  if (request.direction) {
    const BayesFactorResult one = one_sided_bf(s, request.prior, *request.direction);
    r["one_sided"] = {{"direction", side_token(*request.direction)}, {"bf", bf_to_json(one.log_bf10)}};
  }

  const PosteriorGrid grid = posterior_summary(posterior);
  r["posterior"] = {{"median", grid.summary.median},
                    {"ci_lower_95", grid.summary.ci_lower_95},
                    {"ci_upper_95", grid.summary.ci_upper_95},
                    {"normalization_check", grid.normalization_check}};

  if (request.compare_default) {
    const EffectSizePrior baseline = EffectSizePrior::default_cauchy(request.prior.truncation);
    const double log_f0 = directional_log_bf(s, request.prior, request.direction);
    const double log_10 = directional_log_bf(s, baseline, request.direction);
    r["default_comparison"] = {{"default_prior", prior_to_json(baseline)},
                               {"bf_F0", bf_to_json(log_f0)},
                               {"bf_10", bf_to_json(log_10)},
                               {"bf_F1", bf_to_json(transitive_bf(log_f0, log_10))}};
  }

  if (request.grid) {
    std::vector<double> prior_density;
    std::vector<double> posterior_density;
    prior_density.reserve(grid.delta_values.size());
    posterior_density.reserve(grid.delta_values.size());
    for (std::size_t i = 0; i < grid.delta_values.size(); ++i) {
      prior_density.push_back(std::exp(prior_logpdf(request.prior, grid.delta_values[i])));
      posterior_density.push_back(std::exp(grid.log_density[i]));
    }
    r["grid"] = {{"delta", grid.delta_values},
                 {"prior_density", prior_density},
                 {"posterior_density", posterior_density}};
  }
  return r;
}

json fit_result_to_json(const FitResult& fit) {
  return {{"schema_version", kSchemaVersion},
          {"prior", prior_to_json(fit.prior)},
          {"loss", fit.loss},
          {"percentile_feedback",
           {{"p33", fit.percentile_feedback.p33},
            {"p50", fit.percentile_feedback.p50},
            {"p66", fit.percentile_feedback.p66}}},
          {"converged", fit.converged},
          {"at_df_bound", fit.at_df_bound}};
}

json chain_result_to_json(const ReplicationChainResult& chain) {
  json fitted = fit_result_to_json(chain.fitted_prior);
  fitted.erase("schema_version");
  return {{"schema_version", kSchemaVersion},
          {"fitted_prior", fitted},
          {"bf_F0", bf_to_json(chain.log_bf_F0)},
          {"bf_10", bf_to_json(chain.log_bf_10_default)},
          {"bf_F1", bf_to_json(chain.log_bf_F1)}};
}

}  // namespace infbf::service
