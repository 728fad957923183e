#pragma once

#include <stdexcept>
#include <string>

namespace dpf {

/// Error categories raised by the workbench. The C API maps each one onto a
/// stable integer status code (see dpf.h).
enum class ErrorCode {
  kParse,
  kInvalidModel,
  kInvalidConstants,
  kInconsistentTwists,
  kInfeasible,
  kNonIntegral,
  kNotSingular,
  kInvalidChart,
  kDenominatorNotInvertible,
  kSearchBoundExceeded,
  kInternalInconsistency,
  kReducibleEquation,
  kInvalidArgument,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dpf
