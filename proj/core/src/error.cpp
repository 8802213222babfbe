#include "fracdiff/error.hpp"

namespace fracdiff {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::IntegerOrder: return "IntegerOrder";
    case ErrorCode::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorCode::DegenerateFit: return "DegenerateFit";
    case ErrorCode::NonMonotoneTime: return "NonMonotoneTime";
    case ErrorCode::MismatchedSizes: return "MismatchedSizes";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::DegenerateErrors: return "DegenerateErrors";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace fracdiff
