#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace btpgl {

enum class ErrorCode {
  NegativeValuation,
  NonIntegralEntry,
  SingularTransition,
  NotSplitInside,
  NotUnimodular,
  ImproperGenericIntersection,
  ProperFail,
  RankMismatch,
  EnumerationTooLarge,
  GenerationExhausted,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace btpgl
