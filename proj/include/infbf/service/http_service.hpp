#pragma once

#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

namespace infbf::service {

struct HttpResponse {
  int status = 200;
  nlohmann::json body;
};

// Pure request handlers; the server only moves bytes in and out of these.
HttpResponse handle_health();
HttpResponse handle_fit_roulette(const std::string& body);
HttpResponse handle_fit_quantiles(const std::string& body);
HttpResponse handle_analyze(const std::string& body);

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::optional<std::string> static_dir;
};

class HttpService {
 public:
  explicit HttpService(ServiceConfig config);
  ~HttpService();
  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  /// Binds the socket and returns the port actually bound.
  int bind();
  /// Serves until stop(); call bind() first.
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace infbf::service
