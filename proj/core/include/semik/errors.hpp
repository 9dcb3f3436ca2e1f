#pragma once

#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

namespace semik {

enum class ErrorKind {
  BudgetExceeded,
  NonTerminating,
  InvalidParams,
  DomainViolation,
  ActionUndefined,
  TagMismatch,
  NotIdempotentPure,
  NotInvariantBasis,
  WindowEscape,
  IndependenceUnknown,
  PrerequisiteFailed,
  SizeLimit,
  ConfigError,
  ParseError,
};

const char* to_string(ErrorKind k);

// Every tool error carries a kind and an optional machine-readable payload
// (partial results, witnesses).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, nlohmann::json payload = nullptr)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        payload_(std::move(payload)) {}

  ErrorKind kind() const { return kind_; }
  const nlohmann::json& payload() const { return payload_; }

 private:
  ErrorKind kind_;
  nlohmann::json payload_;
};

}  // namespace semik
