#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nhq {

/// Failure categories shared by every module. The harness writes the
/// lowercase name into the error_code column of per-point outputs.
enum class ErrorCode {
  InvalidArgument,
  OutOfRange,
  Singular,
  Defective,
  NoConvergence,
  NormalizationUnderflow,
  StepTooLarge,
  AllDiscarded,
  ConfigError,
  UnknownPreset,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nhq
