#include "minkflow/errors.hpp"

namespace minkflow {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NullVector: return "NullVector";
    case ErrorCode::FrameDrift: return "FrameDrift";
    case ErrorCode::DegenerateFrame: return "DegenerateFrame";
    case ErrorCode::SingularCurvature: return "SingularCurvature";
    case ErrorCode::BlowUp: return "BlowUp";
    case ErrorCode::ConstraintViolation: return "ConstraintViolation";
    case ErrorCode::DegenerateRuling: return "DegenerateRuling";
    case ErrorCode::NullNormal: return "NullNormal";
    case ErrorCode::NotTimelike: return "NotTimelike";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what, std::optional<std::size_t> index)
    : std::runtime_error(std::string(to_string(code)) + ": " + what),
      code_(code),
      detail_(what),
      index_(index) {}

}  // namespace minkflow
