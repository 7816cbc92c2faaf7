#include "phasekit/errors.hpp"

namespace phasekit {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kSingularSeifert: return "SingularSeifert";
    case ErrorCode::kSpectrumMismatch: return "SpectrumMismatch";
    case ErrorCode::kNotVanishing: return "NotVanishing";
    case ErrorCode::kNotRootOfUnity: return "NotRootOfUnity";
    case ErrorCode::kZeroBase: return "ZeroBase";
    case ErrorCode::kSingularPairing: return "SingularPairing";
    case ErrorCode::kOrderTooLarge: return "OrderTooLarge";
    case ErrorCode::kPathTooClose: return "PathTooClose";
    case ErrorCode::kAmbiguousCrossing: return "AmbiguousCrossing";
    case ErrorCode::kZeroLambda: return "ZeroLambda";
    case ErrorCode::kOutsideDomain: return "OutsideDomain";
    case ErrorCode::kDegenerateRatio: return "DegenerateRatio";
    case ErrorCode::kNotInteger: return "NotInteger";
    case ErrorCode::kPathInvalid: return "PathInvalid";
    case ErrorCode::kStepTooLarge: return "StepTooLarge";
    case ErrorCode::kNearDiscriminant: return "NearDiscriminant";
    case ErrorCode::kStiffnessFailure: return "StiffnessFailure";
    case ErrorCode::kMultipleRoot: return "MultipleRoot";
    case ErrorCode::kNonSemisimplePoint: return "NonSemisimplePoint";
    case ErrorCode::kTruncationOverflow: return "TruncationOverflow";
    case ErrorCode::kZeroNormalOrderedTerm: return "ZeroNormalOrderedTerm";
    case ErrorCode::kRegularizationFailure: return "RegularizationFailure";
    case ErrorCode::kUnsupported: return "Unsupported";
  }
  return "Unknown";
}

ErrorClass error_class(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return ErrorClass::kParse;
    case ErrorCode::kNotInteger:
    case ErrorCode::kRegularizationFailure:
    case ErrorCode::kStiffnessFailure:
      return ErrorClass::kTolerance;
    default: return ErrorClass::kDomain;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace phasekit
