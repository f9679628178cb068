#pragma once

#include <exception>
#include <stdexcept>
#include <string>
#include <utility>

namespace infbf::service {

/// Malformed input: a missing or mistyped field, an unknown enum value, a bad
/// prior spec. Maps to HTTP 400 and exit code 2.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

enum class ErrorKind {
  Schema,     // 400, exit 2
  Numerical,  // 422, exit 3 (precondition or numerical failure inside the engine)
  Internal,   // 500, exit 3
};

ErrorKind classify(const std::exception& e) noexcept;

int http_status(ErrorKind kind) noexcept;
int exit_code(ErrorKind kind) noexcept;
std::string to_string(ErrorKind kind);

}  // namespace infbf::service
