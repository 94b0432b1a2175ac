#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ksmooth {

enum class ErrorCode {
  DivisionByZero,
  FieldMismatch,
  Syntax,
  QuadraticUnderRational,
  DimensionMismatch,
  NotFullDimensional,
  NotSymmetric,
  OriginNotInterior,
  NotOnBoundary,
  LimitExceeded,
  NotUnitNorm,
  ZeroOperator,
  EmptyExtremeIntersection,
  NormalizationLeavesField,
  NotProperFace,
  Y0NotInSubspace,
  NotIndependent,
  InvalidInput,
  // Failures below indicate a violated theorem or a kernel bug, not bad input.
  SpanViolation,
  CompletionFailure,
  InternalInconsistency,
};

std::string_view error_code_name(ErrorCode code);

/// True for codes that signal a broken invariant rather than invalid input.
bool is_internal(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }
  /// The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace ksmooth
