#include "lmmse/errors.hpp"

namespace lmmse {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonSymmetric: return "NonSymmetric";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::NumericalSingularity: return "NumericalSingularity";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::NTooSmall: return "NTooSmall";
    case ErrorKind::DegenerateGamma: return "DegenerateGamma";
    case ErrorKind::GammaOutOfRange: return "GammaOutOfRange";
    case ErrorKind::DegenerateSigma: return "DegenerateSigma";
    case ErrorKind::DenominatorNonpositive: return "DenominatorNonpositive";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::BadMagic: return "BadMagic";
    case ErrorKind::TruncatedFile: return "TruncatedFile";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

ErrorCategory category_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NumericalSingularity:
    case ErrorKind::RankDeficient:
    case ErrorKind::DenominatorNonpositive:
      return ErrorCategory::Numerical;
    case ErrorKind::BadMagic:
    case ErrorKind::TruncatedFile:
    case ErrorKind::IoError:
      return ErrorCategory::Io;
    default:
      return ErrorCategory::Validation;
  }
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace lmmse
