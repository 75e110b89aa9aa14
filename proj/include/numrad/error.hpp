#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace numrad {

enum class ErrorCode {
  NonSquare,
  NotHermitian,
  NoConvergence,
  NegativeEigenvalue,
  DimensionMismatch,
  InvalidTolerance,
  InvalidExponent,
  InvalidParameters,
  NotPositive,
  NotUnit,
  NotContraction,
  PreconditionFailed,
  InvalidPartition,
  SchemeParameterMissing,
  NotTwoByTwo,
  ResamplingExhausted,
  UnknownBoundId,
  ArityMismatch,
  ParseError,
};

inline constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NegativeEigenvalue: return "NegativeEigenvalue";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidTolerance: return "InvalidTolerance";
    case ErrorCode::InvalidExponent: return "InvalidExponent";
    case ErrorCode::InvalidParameters: return "InvalidParameters";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::NotContraction: return "NotContraction";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::SchemeParameterMissing: return "SchemeParameterMissing";
    case ErrorCode::NotTwoByTwo: return "NotTwoByTwo";
    case ErrorCode::ResamplingExhausted: return "ResamplingExhausted";
    case ErrorCode::UnknownBoundId: return "UnknownBoundId";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Single exception type for the library; `code()` tells callers what went wrong.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised when an iterative solver hits its cap; carries the residual reached.
/// `partial()` holds the best available answer when the solver can offer one (NaN otherwise).
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual, double partial = std::nan(""))
      : Error(ErrorCode::NoConvergence, what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual),
        partial_(partial) {}

  double residual() const noexcept { return residual_; }
  double partial() const noexcept { return partial_; }

 private:
  double residual_;
  double partial_;
};

}  // namespace numrad
