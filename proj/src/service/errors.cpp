#include "infbf/service/errors.hpp"

#include "infbf/bayes_factor.hpp"
#include "infbf/elicitation.hpp"
#include "infbf/quadrature.hpp"

namespace infbf::service {

ErrorKind classify(const std::exception& e) noexcept {
  if (dynamic_cast<const SchemaError*>(&e)) return ErrorKind::Schema;
  if (dynamic_cast<const std::domain_error*>(&e) || dynamic_cast<const IntegrationError*>(&e) ||
      dynamic_cast<const DegenerateDirectionError*>(&e) ||
      dynamic_cast<const InsufficientInformationError*>(&e) ||
      dynamic_cast<const std::range_error*>(&e) || dynamic_cast<const std::overflow_error*>(&e)) {
    return ErrorKind::Numerical;
  }
  return ErrorKind::Internal;
}

int http_status(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Schema:
      return 400;
    case ErrorKind::Numerical:
      return 422;
    case ErrorKind::Internal:
      return 500;
  }
  return 500;
}

int exit_code(ErrorKind kind) noexcept { return kind == ErrorKind::Schema ? 2 : 3; }

std::string to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Schema:
      return "schema";
    case ErrorKind::Numerical:
      return "numerical";
    case ErrorKind::Internal:
      return "internal";
  }
  return "internal";
}

}  // namespace infbf::service
