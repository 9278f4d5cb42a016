#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fraisse {

enum class ErrorCode {
  kClosureDiverges,
  kVocabularyMismatch,
  kImproperIdeal,
  kInvalidEmbedding,
  kNotFree,
  kNoBasisThrough,
  kTrivialElement,
  kPreconditionFailed,
  kEnumerationOverflow,
  kAmalgamationFailed,
  kNotMember,
  kWitnessAlignmentFailed,
  kUltrafilterChoiceFailed,
  kCollapseDetected,
  kOverlappingH,
  kHarvestFailed,
  kNoAmalgam,
  kFrugalImpossible,
  kParseError,
  kInvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so that
/// callers (and the CLI report) can branch on the kind without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fraisse
