#include "nhq/error.hpp"

namespace nhq {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::OutOfRange: return "out_of_range";
    case ErrorCode::Singular: return "singular";
    case ErrorCode::Defective: return "defective";
    case ErrorCode::NoConvergence: return "no_convergence";
    case ErrorCode::NormalizationUnderflow: return "normalization_underflow";
    case ErrorCode::StepTooLarge: return "step_too_large";
    case ErrorCode::AllDiscarded: return "all_discarded";
    case ErrorCode::ConfigError: return "config_error";
    case ErrorCode::UnknownPreset: return "unknown_preset";
  }
  return "unknown";
}

}  // namespace nhq
