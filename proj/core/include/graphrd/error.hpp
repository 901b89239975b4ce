#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace graphrd {

/// Failure categories raised by the library. Each maps to one named error
/// condition of an operation contract.
enum class ErrorCode {
  InvalidArgument,
  AsymmetricInput,
  DegreeBoundViolated,
  NegativeEntry,
  NonFiniteEntry,
  QuadratureFailure,
  KernelOutOfUnitRange,
  PointOutOfDomain,
  IncompatibleRepresentations,
  BruteForceLimitExceeded,
  InvalidExponent,
  NotAMultiple,
  NotADivisor,
  NonFiniteResult,
  UnknownFamily,
  DimensionMismatch,
  NegativeTime,
  NonFiniteState,
  InsufficientSamples,
  ContractionViolated,
  MassDrift,
  MaxPrincipleViolated,
  CutNormUnavailable,
  CapBelowInitial,
  TimeOutOfRange,
  FamilyMismatch,
  SemigroupCapExceeded,
  CapTruncationExcessive,
  ConfigError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by the RD integrator when the state stops being finite.
class NonFiniteStateError : public Error {
 public:
  NonFiniteStateError(double time, const std::string& message);

  double time() const noexcept { return time_; }

 private:
  double time_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace graphrd
