#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fracdiff {

enum class ErrorCode {
  InvalidArgument,
  NonConvergence,
  NonFinite,
  IntegerOrder,
  ToleranceNotMet,
  DegenerateFit,
  NonMonotoneTime,
  MismatchedSizes,
  DomainError,
  DegenerateErrors,
};

std::string_view to_string(ErrorCode code);

/// Single exception type thrown by the library; `code()` identifies the failure class.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fracdiff
