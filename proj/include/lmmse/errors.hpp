#pragma once

#include <stdexcept>
#include <string>

namespace lmmse {

enum class ErrorKind {
  InvalidArgument,
  DimensionMismatch,
  NonSymmetric,
  NotPositiveDefinite,
  NumericalSingularity,
  RankDeficient,
  NTooSmall,
  DegenerateGamma,
  GammaOutOfRange,
  DegenerateSigma,
  DenominatorNonpositive,
  InsufficientData,
  BadMagic,
  TruncatedFile,
  IoError,
};

// Coarse grouping used for process exit codes: validation 2, numerical 3, I/O 4.
enum class ErrorCategory { Validation, Numerical, Io };

const char* to_string(ErrorKind kind);
ErrorCategory category_of(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  ErrorCategory category() const noexcept { return category_of(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

}  // namespace lmmse
