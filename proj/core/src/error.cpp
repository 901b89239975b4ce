#include "graphrd/error.hpp"

namespace graphrd {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::AsymmetricInput: return "AsymmetricInput";
    case ErrorCode::DegreeBoundViolated: return "DegreeBoundViolated";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::NonFiniteEntry: return "NonFiniteEntry";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::KernelOutOfUnitRange: return "KernelOutOfUnitRange";
    case ErrorCode::PointOutOfDomain: return "PointOutOfDomain";
    case ErrorCode::IncompatibleRepresentations: return "IncompatibleRepresentations";
    case ErrorCode::BruteForceLimitExceeded: return "BruteForceLimitExceeded";
    case ErrorCode::InvalidExponent: return "InvalidExponent";
    case ErrorCode::NotAMultiple: return "NotAMultiple";
    case ErrorCode::NotADivisor: return "NotADivisor";
    case ErrorCode::NonFiniteResult: return "NonFiniteResult";
    case ErrorCode::UnknownFamily: return "UnknownFamily";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NegativeTime: return "NegativeTime";
    case ErrorCode::NonFiniteState: return "NonFiniteState";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::ContractionViolated: return "ContractionViolated";
    case ErrorCode::MassDrift: return "MassDrift";
    case ErrorCode::MaxPrincipleViolated: return "MaxPrincipleViolated";
    case ErrorCode::CutNormUnavailable: return "CutNormUnavailable";
    case ErrorCode::CapBelowInitial: return "CapBelowInitial";
    case ErrorCode::TimeOutOfRange: return "TimeOutOfRange";
    case ErrorCode::FamilyMismatch: return "FamilyMismatch";
    case ErrorCode::SemigroupCapExceeded: return "SemigroupCapExceeded";
    case ErrorCode::CapTruncationExcessive: return "CapTruncationExcessive";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

NonFiniteStateError::NonFiniteStateError(double time, const std::string& message)
    : Error(ErrorCode::NonFiniteState, message), time_(time) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace graphrd
