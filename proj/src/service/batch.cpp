#include "infbf/service/batch.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <thread>

#include <spdlog/spdlog.h>

#include "infbf/bayes_factor.hpp"
#include "infbf/service/errors.hpp"
#include "infbf/service/prior_spec.hpp"
#include "infbf/service/report.hpp"

namespace infbf::service {
namespace {

constexpr const char* kHeader[] = {"study_id", "design", "t", "n1", "n2", "side"};
constexpr std::size_t kColumns = 6;

// Splits one CSV record; double quotes may wrap a field and "" escapes a quote.
std::vector<std::string> split_record(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  for (auto& f : fields) {
    while (!f.empty() && (f.back() == ' ' || f.back() == '\t')) f.pop_back();
    while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) f.erase(f.begin());
  }
  return fields;
}

std::string quote_if_needed(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_real(const std::string& text, const std::string& field) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || end != text.data() + text.size()) {
    throw SchemaError(field, "expected a number, got '" + text + "'");
  }
  return v;
}

long parse_count(const std::string& text, const std::string& field) {
  long v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || end != text.data() + text.size()) {
    throw SchemaError(field, "expected an integer, got '" + text + "'");
  }
  return v;
}

BatchRow parse_row(const std::vector<std::string>& f) {
  if (f.size() != kColumns) {
    throw SchemaError("row", "expected 6 fields, got " + std::to_string(f.size()));
  }
  BatchRow row;
  row.study_id = f[0];
  row.design = parse_design(f[1]);
  row.t = parse_real(f[2], "t");
  row.n1 = parse_count(f[3], "n1");
  if (row.design == Design::TwoSampleIndependent) {
    if (f[4].empty()) throw SchemaError("n2", "required for design 'two'");
    row.n2 = parse_count(f[4], "n2");
  } else if (!f[4].empty()) {
    throw SchemaError("n2", "must be empty for design 'one'");
  }
  row.side = parse_side(f[5]);
  return row;
}

TTestSummary to_summary(const BatchRow& row) {
  try {
    return row.design == Design::OneSampleOrPaired ? TTestSummary::one_sample(row.t, row.n1)
                                                   : TTestSummary::two_sample(row.t, row.n1, *row.n2);
  } catch (const std::domain_error& e) {
    // Name the offending column for the sidecar.
    const bool n_problem = row.n1 < 2 || (row.n2 && *row.n2 < 2);
    throw SchemaError(n_problem ? (row.n1 < 2 ? "n1" : "n2") : "t", e.what());
  }
}

double log_bf_for_side(const TTestSummary& s, const EffectSizePrior& prior, Orientation side) {
  if (side == Orientation::TwoSided) return bayes_factor(s, prior).log_bf10;
  return one_sided_bf(s, prior.untruncated(), side).log_bf10;
}

struct PendingRow {
  std::size_t line;
  BatchRow row;
  TTestSummary summary;
};

}  // namespace

BatchResult run_batch(std::istream& csv, const BatchOptions& options) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(csv, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    have_header = true;
    break;
  }
  if (!have_header) throw SchemaError("file", "input is empty");
  {
    const auto header = split_record(line);
    bool ok = header.size() == kColumns;
    for (std::size_t i = 0; ok && i < kColumns; ++i) ok = header[i] == kHeader[i];
    if (!ok) {
      throw SchemaError("header", "line " + std::to_string(line_no) +
                                      ": expected 'study_id,design,t,n1,n2,side'");
    }
  }

  BatchResult result;
  std::vector<PendingRow> pending;
  while (std::getline(csv, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto fields = split_record(line);
    try {
      BatchRow row = parse_row(fields);
      const TTestSummary summary = to_summary(row);
      pending.push_back({line_no, std::move(row), summary});
    } catch (const SchemaError& e) {
      result.errors.push_back({line_no, fields.empty() ? "" : fields[0], e.field(), e.what()});
    }
  }
  if (pending.empty() && result.errors.empty()) throw SchemaError("file", "no data rows after the header");

  // Data-parallel evaluation into fixed slots keeps the output order independent of scheduling.
  std::vector<std::optional<BatchOutputRow>> out(pending.size());
  std::vector<std::optional<BatchError>> failed(pending.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < pending.size(); i = next++) {
      const PendingRow& p = pending[i];
      try {
        BatchOutputRow r;
        r.line = p.line;
        r.row = p.row;
        r.d_obs = p.row.t / std::sqrt(p.summary.n_eff());
        r.log_bf_informed = log_bf_for_side(p.summary, options.prior, p.row.side);
        if (options.compare_default) {
          r.log_bf_default = log_bf_for_side(p.summary, EffectSizePrior::default_cauchy(), p.row.side);
        }
        out[i] = std::move(r);
      } catch (const std::exception& e) {
        spdlog::debug("batch line {}: {}", p.line, e.what());
        failed[i] = BatchError{p.line, p.row.study_id, "", e.what()};
      }
    }
  };
  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(pending.size(), 1)));
  {
    std::vector<std::jthread> pool;
    for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
    worker();
  }

  for (std::size_t i = 0; i < pending.size(); ++i) {
    if (out[i]) result.rows.push_back(std::move(*out[i]));
    if (failed[i]) result.errors.push_back(std::move(*failed[i]));
  }
  std::stable_sort(result.errors.begin(), result.errors.end(),
                   [](const BatchError& a, const BatchError& b) { return a.line < b.line; });
  return result;
}

void write_batch_csv(std::ostream& out, const BatchResult& result, bool compare_default) {
  out << "study_id,design,t,n1,n2,side,d_obs,log_bf_informed,bf_informed";
  if (compare_default) out << ",log_bf_default,bf_default";
  out << '\n';
  const auto linear = [](double log_bf) {
    return std::fabs(log_bf) <= kMaxLinearLog ? format_double(std::exp(log_bf)) : std::string();
  };
  for (const auto& r : result.rows) {
    out << quote_if_needed(r.row.study_id) << ',' << to_string(r.row.design) << ','
        << format_double(r.row.t) << ',' << r.row.n1 << ',' << (r.row.n2 ? std::to_string(*r.row.n2) : "")
        << ',' << side_token(r.row.side) << ',' << format_double(r.d_obs) << ','
        << format_double(r.log_bf_informed) << ',' << linear(r.log_bf_informed);
    if (compare_default) {
      out << ',' << (r.log_bf_default ? format_double(*r.log_bf_default) : "") << ','
          << (r.log_bf_default ? linear(*r.log_bf_default) : "");
    }
    out << '\n';
  }
}

void write_error_sidecar(std::ostream& out, const BatchResult& result) {
  out << "line,study_id,field,message\n";
  for (const auto& e : result.errors) {
    out << e.line << ',' << quote_if_needed(e.study_id) << ',' << quote_if_needed(e.field) << ','
        << quote_if_needed(e.message) << '\n';
  }
}

}  // namespace infbf::service
