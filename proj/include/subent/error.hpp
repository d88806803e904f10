#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace subent {

enum class ErrorCode {
  DomainError,
  NumericalError,
  DimensionMismatch,
  NotHermitian,
  NotUnitTrace,
  NotPositive,
  NotNormalized,
  InvalidDecomposition,
  InvalidPOVM,
  NotIsometry,
  RankMismatch,
  InvalidConfig,
  NonConvergence,
  FOutOfRange,
  XOutOfRange,
  FOutOfDomain,
  InvalidBlochParams,
  NoBracket,
  NonUniformGrid,
  NotRealizable,
  MoreThanThreeValues,
  InvalidPermutation,
  NotInDiagonalClass,
  DimensionTooSmall,
  ParseError,
  IoError,
};

constexpr std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NumericalError: return "NumericalError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotUnitTrace: return "NotUnitTrace";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::InvalidDecomposition: return "InvalidDecomposition";
    case ErrorCode::InvalidPOVM: return "InvalidPOVM";
    case ErrorCode::NotIsometry: return "NotIsometry";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::FOutOfRange: return "FOutOfRange";
    case ErrorCode::XOutOfRange: return "XOutOfRange";
    case ErrorCode::FOutOfDomain: return "FOutOfDomain";
    case ErrorCode::InvalidBlochParams: return "InvalidBlochParams";
    case ErrorCode::NoBracket: return "NoBracket";
    case ErrorCode::NonUniformGrid: return "NonUniformGrid";
    case ErrorCode::NotRealizable: return "NotRealizable";
    case ErrorCode::MoreThanThreeValues: return "MoreThanThreeValues";
    case ErrorCode::InvalidPermutation: return "InvalidPermutation";
    case ErrorCode::NotInDiagonalClass: return "NotInDiagonalClass";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable code; the
/// CLI prints `error_name(code())` next to the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace subent
