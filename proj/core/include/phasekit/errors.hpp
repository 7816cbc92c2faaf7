#pragma once

#include <stdexcept>
#include <string>

namespace phasekit {

enum class ErrorCode {
  kParse,
  kInvalidArgument,
  kSingularSeifert,
  kSpectrumMismatch,
  kNotVanishing,
  kNotRootOfUnity,
  kZeroBase,
  kSingularPairing,
  kOrderTooLarge,
  kPathTooClose,
  kAmbiguousCrossing,
  kZeroLambda,
  kOutsideDomain,
  kDegenerateRatio,
  kNotInteger,
  kPathInvalid,
  kStepTooLarge,
  kNearDiscriminant,
  kStiffnessFailure,
  kMultipleRoot,
  kNonSemisimplePoint,
  kTruncationOverflow,
  kZeroNormalOrderedTerm,
  kRegularizationFailure,
  kUnsupported,
};

// Failure classes used for process exit codes.
enum class ErrorClass { kParse, kDomain, kTolerance };

const char* error_name(ErrorCode code);
ErrorClass error_class(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace phasekit
