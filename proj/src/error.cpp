#include "ksmooth/error.hpp"

namespace ksmooth {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DIVISION_BY_ZERO";
    case ErrorCode::FieldMismatch: return "FIELD_MISMATCH";
    case ErrorCode::Syntax: return "SYNTAX_ERROR";
    case ErrorCode::QuadraticUnderRational: return "QUADRATIC_LITERAL_UNDER_RATIONAL";
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::NotFullDimensional: return "NOT_FULL_DIMENSIONAL";
    case ErrorCode::NotSymmetric: return "NOT_SYMMETRIC";
    case ErrorCode::OriginNotInterior: return "ORIGIN_NOT_INTERIOR";
    case ErrorCode::NotOnBoundary: return "NOT_ON_BOUNDARY";
    case ErrorCode::LimitExceeded: return "LIMIT_EXCEEDED";
    case ErrorCode::NotUnitNorm: return "NOT_UNIT_NORM";
    case ErrorCode::ZeroOperator: return "ZERO_OPERATOR";
    case ErrorCode::EmptyExtremeIntersection: return "EMPTY_EXTREME_INTERSECTION";
    case ErrorCode::NormalizationLeavesField: return "NORMALIZATION_LEAVES_FIELD";
    case ErrorCode::NotProperFace: return "NOT_PROPER_FACE";
    case ErrorCode::Y0NotInSubspace: return "Y0_NOT_IN_SUBSPACE";
    case ErrorCode::NotIndependent: return "NOT_INDEPENDENT";
    case ErrorCode::InvalidInput: return "INVALID_INPUT";
    case ErrorCode::SpanViolation: return "SPAN_VIOLATION";
    case ErrorCode::CompletionFailure: return "COMPLETION_FAILURE";
    case ErrorCode::InternalInconsistency: return "INTERNAL_INCONSISTENCY";
  }
  return "UNKNOWN";
}

bool is_internal(ErrorCode code) {
  return code == ErrorCode::SpanViolation || code == ErrorCode::CompletionFailure ||
         code == ErrorCode::InternalInconsistency;
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code), detail_(what) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace ksmooth
