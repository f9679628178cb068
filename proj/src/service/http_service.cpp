#include "infbf/service/http_service.hpp"

#include <stdexcept>

#include <httplib.h>
#include <spdlog/spdlog.h>

#include "infbf/elicitation.hpp"
#include "infbf/service/errors.hpp"
#include "infbf/service/report.hpp"

namespace infbf::service {
namespace {

using nlohmann::json;

HttpResponse error_response(const std::exception& e) {
  const ErrorKind kind = classify(e);
  json error = {{"kind", to_string(kind)}};
  if (kind == ErrorKind::Internal) {
    spdlog::error("internal error while handling request: {}", e.what());
    error["message"] = "internal error";
  } else {
    error["message"] = e.what();
  }
  if (const auto* schema = dynamic_cast<const SchemaError*>(&e)) error["field"] = schema->field();
  return {http_status(kind), {{"schema_version", kSchemaVersion}, {"error", error}}};
}

template <class F>
HttpResponse guarded(F&& handler) {
  try {
    return {200, handler()};
  } catch (const std::exception& e) {
    return error_response(e);
  } catch (...) {
    return error_response(std::runtime_error("unknown exception"));
  }
}

json parse_body(const std::string& body) {
  try {
    json j = json::parse(body);
    if (!j.is_object()) throw SchemaError("body", "must be a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    throw SchemaError("body", std::string("invalid JSON: ") + e.what());
  }
}

double number_field(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) throw SchemaError(key, "missing");
  if (!j[key].is_number()) throw SchemaError(key, "must be a number");
  return j[key].get<double>();
}

std::optional<double> optional_number(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return number_field(j, key);
}

ElicitationSheet sheet_from_json(const json& j) {
  ElicitationSheet sheet;
  if (!j.contains("bin_edges") || !j["bin_edges"].is_array()) {
    throw SchemaError("bin_edges", "must be an array of numbers");
  }
  for (const auto& v : j["bin_edges"]) {
    if (!v.is_number()) throw SchemaError("bin_edges", "must be an array of numbers");
    sheet.bin_edges.push_back(v.get<double>());
  }
  if (!j.contains("chip_counts") || !j["chip_counts"].is_array()) {
    throw SchemaError("chip_counts", "must be an array of integers");
  }
  for (const auto& v : j["chip_counts"]) {
    if (!v.is_number_integer()) throw SchemaError("chip_counts", "must be an array of integers");
    sheet.chip_counts.push_back(v.get<long>());
  }
  if (j.contains("direction_hint") && !j["direction_hint"].is_null()) {
    const json& h = j["direction_hint"];
    if (h == "pos") {
      sheet.direction_hint = Truncation::PositiveOnly;
    } else if (h == "neg") {
      sheet.direction_hint = Truncation::NegativeOnly;
    } else {
      throw SchemaError("direction_hint", "must be 'pos', 'neg' or null");
    }
  }
  try {
    sheet.validate();
  } catch (const InsufficientInformationError&) {
    throw;
  } catch (const std::domain_error& e) {
    const std::string what = e.what();
    throw SchemaError(what.substr(0, what.find(':')), what.substr(what.find(':') + 2));
  }
  return sheet;
}

}  // namespace

HttpResponse handle_health() {
  return {200, {{"schema_version", kSchemaVersion}, {"status", "ok"}}};
}

HttpResponse handle_fit_roulette(const std::string& body) {
  return guarded([&] {
    const json j = parse_body(body);
    const ElicitationSheet sheet = sheet_from_json(j);
    return fit_result_to_json(fit_t_to_histogram(sheet, optional_number(j, "df")));
  });
}

HttpResponse handle_fit_quantiles(const std::string& body) {
  return guarded([&] {
    const json j = parse_body(body);
    const double df = optional_number(j, "df").value_or(3.0);
    return fit_result_to_json(
        fit_t_to_quantiles(number_field(j, "p33"), number_field(j, "p50"), number_field(j, "p66"), df));
  });
}

HttpResponse handle_analyze(const std::string& body) {
  return guarded([&] { return analyze(analysis_request_from_json(parse_body(body))); });
}

struct HttpService::Impl {
  ServiceConfig config;
  httplib::Server server;
};

namespace {

void reply(httplib::Response& res, const HttpResponse& r) {
  res.status = r.status;
  res.set_content(r.body.dump(), "application/json");
}

}  // namespace

HttpService::HttpService(ServiceConfig config) : impl_(std::make_unique<Impl>()) {
  impl_->config = std::move(config);
  auto& server = impl_->server;
  server.Get("/v1/health", [](const httplib::Request&, httplib::Response& res) { reply(res, handle_health()); });
  server.Post("/v1/fit-roulette", [](const httplib::Request& req, httplib::Response& res) {
    reply(res, handle_fit_roulette(req.body));
  });
  server.Post("/v1/fit-quantiles", [](const httplib::Request& req, httplib::Response& res) {
    reply(res, handle_fit_quantiles(req.body));
  });
  server.Post("/v1/analyze", [](const httplib::Request& req, httplib::Response& res) {
    reply(res, handle_analyze(req.body));
  });
  server.set_logger([](const httplib::Request& req, const httplib::Response& res) {
    spdlog::info("{} {} -> {}", req.method, req.path, res.status);
  });
  if (impl_->config.static_dir && !server.set_mount_point("/", *impl_->config.static_dir)) {
    throw std::runtime_error("static asset directory not found: " + *impl_->config.static_dir);
  }
}

HttpService::~HttpService() = default;

int HttpService::bind() {
  auto& server = impl_->server;
  const auto& c = impl_->config;
  const int port = c.port == 0 ? server.bind_to_any_port(c.host) : (server.bind_to_port(c.host, c.port) ? c.port : -1);
  if (port < 0) throw std::runtime_error("cannot bind " + c.host + ":" + std::to_string(c.port));
  spdlog::info("listening on {}:{}", c.host, port);
  return port;
}

void HttpService::listen() { impl_->server.listen_after_bind(); }

void HttpService::stop() { impl_->server.stop(); }

}  // namespace infbf::service
