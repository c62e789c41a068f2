#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace heritage {

enum class ErrorCode {
  FileNotFound,
  ParseError,
  MissingColumn,
  InvariantError,
  DomainError,
  RangeError,
  EmptyCategory,
  DuplicateComponent,
  NoComparables,
  UnknownComponent,
  CurrencyMismatch,
  TooFewAlternatives,
  ConfigError,
  NoCrossing,
  SolverFailure,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::FileNotFound: return "FILE_NOT_FOUND";
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::MissingColumn: return "MISSING_COLUMN";
    case ErrorCode::InvariantError: return "INVARIANT_ERROR";
    case ErrorCode::DomainError: return "DOMAIN_ERROR";
    case ErrorCode::RangeError: return "RANGE_ERROR";
    case ErrorCode::EmptyCategory: return "EMPTY_CATEGORY";
    case ErrorCode::DuplicateComponent: return "DUPLICATE_COMPONENT";
    case ErrorCode::NoComparables: return "NO_COMPARABLES";
    case ErrorCode::UnknownComponent: return "UNKNOWN_COMPONENT";
    case ErrorCode::CurrencyMismatch: return "CURRENCY_MISMATCH";
    case ErrorCode::TooFewAlternatives: return "TOO_FEW_ALTERNATIVES";
    case ErrorCode::ConfigError: return "CONFIG_ERROR";
    case ErrorCode::NoCrossing: return "NO_CROSSING";
    case ErrorCode::SolverFailure: return "SOLVER_FAILURE";
  }
  return "UNKNOWN";
}

// Solver failures map to exit code 2, everything else is a validation
// failure (exit code 1).
constexpr bool is_solver_failure(ErrorCode code) {
  return code == ErrorCode::NoCrossing || code == ErrorCode::SolverFailure;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace heritage
