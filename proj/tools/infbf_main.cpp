// infbf: informed Bayes factors for t-tests from summary statistics.
#include <csignal>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "infbf/bayes_factor.hpp"
#include "infbf/elicitation.hpp"
#include "infbf/service/batch.hpp"
#include "infbf/service/curve.hpp"
#include "infbf/service/errors.hpp"
#include "infbf/service/http_service.hpp"
#include "infbf/service/logging.hpp"
#include "infbf/service/prior_spec.hpp"
#include "infbf/service/report.hpp"

namespace {

using namespace infbf;
using namespace infbf::service;

struct SummaryArgs {
  std::string design = "one";
  double t = 0.0;
  long n1 = 0;
  std::optional<long> n2;

  void attach(CLI::App* app) {
    app->add_option("--design", design, "one (one-sample/paired) or two (independent groups)")
        ->check(CLI::IsMember({"one", "two"}));
    app->add_option("-t,--t", t, "t-statistic")->required();
    app->add_option("-n,--n1", n1, "sample size (first group)")->required();
    app->add_option("--n2", n2, "second group size for design two");
  }

  TTestSummary build() const {
    if (parse_design(design) == Design::OneSampleOrPaired) {
      if (n2) throw SchemaError("n2", "only valid with --design two");
      return TTestSummary::one_sample(t, n1);
    }
    if (!n2) throw SchemaError("n2", "required with --design two");
    return TTestSummary::two_sample(t, n1, *n2);
  }
};

std::vector<double> parse_list(const std::string& text, const std::string& field) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw SchemaError(field, "expected comma-separated numbers, got '" + item + "'");
    }
  }
  return out;
}

void emit(const nlohmann::json& j, const std::string& output) {
  if (output.empty() || output == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(output);
  if (!out) throw SchemaError("output", "cannot open " + output);
  out << j.dump(2) << '\n';
}

HttpService* g_service = nullptr;

void on_signal(int) {
  if (g_service) g_service->stop();
}

}  // namespace

int main(int argc, char** argv) {
  init_logging();
  CLI::App app{"Informed Bayes factors for t-tests"};
  app.require_subcommand(1);
  std::string output;

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "Bayes factor and posterior summary for one t-test");
  SummaryArgs analyze_args;
  analyze_args.attach(analyze_cmd);
  std::string analyze_prior = "t:0,0.7071067811865476,1";
  std::string direction;
  bool compare_default = false;
  bool grid = false;
  analyze_cmd->add_option("--prior", analyze_prior, "t:<loc>,<scale>,<df> or normal:<mean>,<var>[+trunc=pos|neg]");
  analyze_cmd->add_option("--direction", direction, "pos or neg: also report the one-sided BF")
      ->check(CLI::IsMember({"two", "pos", "neg"}));
  analyze_cmd->add_flag("--compare-default", compare_default, "add the default Cauchy(0, 1/sqrt(2)) analysis");
  analyze_cmd->add_flag("--grid", grid, "include prior/posterior density arrays");
  analyze_cmd->add_option("-o,--output", output, "write the JSON report here instead of stdout");

  // batch
  auto* batch_cmd = app.add_subcommand("batch", "Evaluate a CSV of t-tests");
  std::string batch_input;
  std::string batch_errors;
  std::string batch_prior = "t:0,0.7071067811865476,1";
  bool batch_default = false;
  unsigned threads = 0;
  batch_cmd->add_option("-i,--input", batch_input, "CSV with header study_id,design,t,n1,n2,side")->required();
  batch_cmd->add_option("--prior", batch_prior, "informed prior spec");
  batch_cmd->add_flag("--compare-default", batch_default, "add default-prior log BFs");
  batch_cmd->add_option("-o,--output", output, "output CSV (stdout if omitted)");
  batch_cmd->add_option("--errors", batch_errors, "error sidecar CSV (stderr if omitted)");
  batch_cmd->add_option("-j,--threads", threads, "worker threads (0 = all cores)");

  // curve
  auto* curve_cmd = app.add_subcommand("curve", "Largest BF01 (t = 0, two equal groups) as a function of n");
  std::string prior_a = "t:0.35,0.102,3";
  std::string prior_b = "t:0,0.7071067811865476,1";
  long n_min = 2;
  long n_max = 200;
  curve_cmd->add_option("--prior-a", prior_a, "first prior (default: informed t(0.35, 0.102, 3))");
  curve_cmd->add_option("--prior-b", prior_b, "second prior (default: Cauchy(0, 1/sqrt(2)))");
  curve_cmd->add_option("--n-min", n_min, "smallest group size");
  curve_cmd->add_option("--n-max", n_max, "largest group size");
  curve_cmd->add_option("-o,--output", output, "output CSV (stdout if omitted)");

  // fit
  auto* fit_cmd = app.add_subcommand("fit", "Fit a t prior");
  fit_cmd->require_subcommand(1);
  auto* roulette_cmd = fit_cmd->add_subcommand("roulette", "Fit to a chip histogram");
  std::string edges_text;
  std::string chips_text;
  std::optional<double> fit_df;
  std::string hint;
  roulette_cmd->add_option("--edges", edges_text, "comma-separated bin edges")->required();
  roulette_cmd->add_option("--chips", chips_text, "comma-separated chip counts")->required();
  roulette_cmd->add_option("--df", fit_df, "fix the degrees of freedom (free if omitted)");
  roulette_cmd->add_option("--direction", hint, "pos or neg: fit a truncated t")
      ->check(CLI::IsMember({"pos", "neg"}));
  roulette_cmd->add_option("-o,--output", output);

  auto* quantiles_cmd = fit_cmd->add_subcommand("quantiles", "Fit to elicited 33/50/66% quantiles");
  double p33 = 0.0;
  double p50 = 0.0;
  double p66 = 0.0;
  double quantile_df = 3.0;
  quantiles_cmd->add_option("--p33", p33)->required();
  quantiles_cmd->add_option("--p50", p50)->required();
  quantiles_cmd->add_option("--p66", p66)->required();
  quantiles_cmd->add_option("--df", quantile_df, "degrees of freedom");
  quantiles_cmd->add_option("-o,--output", output);

  auto* posterior_cmd = fit_cmd->add_subcommand("posterior", "Fit a t to a posterior density");
  SummaryArgs posterior_args;
  posterior_args.attach(posterior_cmd);
  std::string posterior_prior = "t:0,0.7071067811865476,1";
  posterior_cmd->add_option("--prior", posterior_prior);
  posterior_cmd->add_option("-o,--output", output);

  auto* chain_cmd = fit_cmd->add_subcommand("chain", "Fit the original posterior, test the replication with it");
  SummaryArgs original_args;
  original_args.attach(chain_cmd);
  std::string chain_prior = "t:0,0.7071067811865476,1";
  double rep_t = 0.0;
  long rep_n1 = 0;
  std::optional<long> rep_n2;
  chain_cmd->add_option("--prior", chain_prior, "prior for the original study");
  chain_cmd->add_option("--rep-t", rep_t, "replication t-statistic")->required();
  chain_cmd->add_option("--rep-n1", rep_n1, "replication sample size")->required();
  chain_cmd->add_option("--rep-n2", rep_n2, "replication second group (same design as the original)");
  chain_cmd->add_option("-o,--output", output);

  // serve
  auto* serve_cmd = app.add_subcommand("serve", "HTTP/JSON service for the elicitation UI");
  ServiceConfig service_config;
  std::string static_dir;
  serve_cmd->add_option("--host", service_config.host);
  serve_cmd->add_option("--port", service_config.port);
  serve_cmd->add_option("--static-dir", static_dir, "serve UI assets from this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*analyze_cmd) {
      AnalysisRequest request;
      request.summary = analyze_args.build();
      request.prior = parse_prior_spec(analyze_prior);
      if (!direction.empty() && direction != "two") {
        if (request.prior.truncation != Truncation::None) {
          throw SchemaError("direction", "a truncated prior is already directional; drop one of the two");
        }
        request.direction = parse_side(direction, "direction");
      }
      request.compare_default = compare_default;
      request.grid = grid;
      emit(analyze(request), output);
      return 0;
    }

    if (*batch_cmd) {
      std::ifstream in(batch_input);
      if (!in) throw SchemaError("input", "cannot open " + batch_input);
      BatchOptions options;
      options.prior = parse_prior_spec(batch_prior);
      options.compare_default = batch_default;
      options.threads = threads;
      const BatchResult result = run_batch(in, options);
      if (output.empty()) {
        write_batch_csv(std::cout, result, batch_default);
      } else {
        std::ofstream out(output);
        write_batch_csv(out, result, batch_default);
      }
      if (!result.errors.empty()) {
        if (batch_errors.empty()) {
          write_error_sidecar(std::cerr, result);
        } else {
          std::ofstream err(batch_errors);
          write_error_sidecar(err, result);
        }
      }
      return result.rows.empty() ? 3 : 0;
    }

    if (*curve_cmd) {
      const Bf01Curve curve =
          max_bf01_curve(parse_prior_spec(prior_a, "prior-a"), parse_prior_spec(prior_b, "prior-b"), n_min, n_max);
      if (output.empty()) {
        write_curve_csv(std::cout, curve);
      } else {
        std::ofstream out(output);
        write_curve_csv(out, curve);
      }
      return 0;
    }

    if (*roulette_cmd) {
      ElicitationSheet sheet;
      sheet.bin_edges = parse_list(edges_text, "edges");
      for (double c : parse_list(chips_text, "chips")) {
        if (c != static_cast<double>(static_cast<long>(c))) throw SchemaError("chips", "counts must be integers");
        sheet.chip_counts.push_back(static_cast<long>(c));
      }
      if (hint == "pos") sheet.direction_hint = Truncation::PositiveOnly;
      if (hint == "neg") sheet.direction_hint = Truncation::NegativeOnly;
      emit(fit_result_to_json(fit_t_to_histogram(sheet, fit_df)), output);
      return 0;
    }
    if (*quantiles_cmd) {
      emit(fit_result_to_json(fit_t_to_quantiles(p33, p50, p66, quantile_df)), output);
      return 0;
    }
    if (*posterior_cmd) {
      const PosteriorGrid grid_result = posterior_summary(posterior_args.build(), parse_prior_spec(posterior_prior));
      emit(fit_result_to_json(fit_t_to_density_grid(grid_result)), output);
      return 0;
    }
    if (*chain_cmd) {
      const TTestSummary original = original_args.build();
      const TTestSummary replication = original.design() == Design::OneSampleOrPaired
                                           ? TTestSummary::one_sample(rep_t, rep_n1)
                                           : TTestSummary::two_sample(rep_t, rep_n1, rep_n2.value_or(rep_n1));
      emit(chain_result_to_json(replication_chain(original, parse_prior_spec(chain_prior), replication)), output);
      return 0;
    }

    if (*serve_cmd) {
      if (!static_dir.empty()) service_config.static_dir = static_dir;
      HttpService service(service_config);
      const int port = service.bind();
      g_service = &service;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cerr << "serving on http://" << service_config.host << ':' << port << '\n';
      service.listen();
      g_service = nullptr;
      return 0;
    }
  } catch (const std::exception& e) {
    const ErrorKind kind = classify(e);
    std::cerr << "error (" << to_string(kind) << "): " << e.what() << '\n';
    return exit_code(kind);
  }
  return 0;
}
