#pragma once

#include <stdexcept>
#include <string>

namespace ringdecomp {

enum class ErrorCode {
  RingMismatch,
  ShapeMismatch,
  NotInvertible,
  NotHermitian,
  NotSymmetric,
  NotAntisymmetric,
  NotInteger,
  SizeCapExceeded,
  ClusterAmbiguity,
  UnsupportedRingKind,
  NotEquivalentToGenerator,
  Parse,
};

const char* error_code_name(ErrorCode code);

/// All library failures are reported through this exception type; `code()`
/// lets callers (the CLI in particular) map failures to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ringdecomp
