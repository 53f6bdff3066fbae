#include "btpgl/errors.hpp"

namespace btpgl {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NegativeValuation: return "NegativeValuation";
    case ErrorCode::NonIntegralEntry: return "NonIntegralEntry";
    case ErrorCode::SingularTransition: return "SingularTransition";
    case ErrorCode::NotSplitInside: return "NotSplitInside";
    case ErrorCode::NotUnimodular: return "NotUnimodular";
    case ErrorCode::ImproperGenericIntersection: return "ImproperGenericIntersection";
    case ErrorCode::ProperFail: return "ProperFail";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::GenerationExhausted: return "GenerationExhausted";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

}  // namespace btpgl
