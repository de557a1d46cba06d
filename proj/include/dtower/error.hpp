#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dtower {

enum class ErrorCode {
  kNotPrime,
  kSizeCapExceeded,
  kNoIrreducibleFound,
  kDivisionByZero,
  kDegreeNotDividing,
  kContextMismatch,
  kNoSplittingFound,
  kBadRankPair,
  kAmbientTooSmall,
  kZeroPoint,
  kNotFoundWithinBound,
  kCharacteristicDividesK,
  kBracketMismatch,
  kNoMarkedPreimage,
  kNotCyclic,
  kZeroDenominator,
  kNotOnCurve,
  kNotInSubfield,
  kParse,
  kPrecondition,
};

std::string_view to_string(ErrorCode code);

/// The single exception type thrown by the library; `code()` says which
/// contract was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dtower
