#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "infbf/ttest.hpp"

namespace infbf::service {

/// One input line of the batch CSV (header study_id,design,t,n1,n2,side).
struct BatchRow {
  std::string study_id;
  Design design = Design::OneSampleOrPaired;
  double t = 0.0;
  long n1 = 0;
  std::optional<long> n2;
  Orientation side = Orientation::TwoSided;
};

struct BatchOutputRow {
  std::size_t line = 0;
  BatchRow row;
  double d_obs = 0.0;
  double log_bf_informed = 0.0;
  std::optional<double> log_bf_default;
};

struct BatchError {
  std::size_t line = 0;
  std::string study_id;
  std::string field;
  std::string message;
};

struct BatchResult {
  std::vector<BatchOutputRow> rows;
  std::vector<BatchError> errors;
};

struct BatchOptions {
  EffectSizePrior prior = EffectSizePrior::default_cauchy();
  bool compare_default = false;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Parses and evaluates every row; bad rows land in `errors`, the rest are
/// computed in parallel and returned in input order. Throws SchemaError for an
/// empty input or a wrong header.
BatchResult run_batch(std::istream& csv, const BatchOptions& options);

void write_batch_csv(std::ostream& out, const BatchResult& result, bool compare_default);
void write_error_sidecar(std::ostream& out, const BatchResult& result);

}  // namespace infbf::service
