#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace minkflow {

/// Failure categories raised by the numerical core.
enum class ErrorCode {
  InvalidArgument,      ///< precondition violated by the caller
  NullVector,           ///< normalization of a (near-)null vector
  FrameDrift,           ///< integrated frame left its orthonormality band
  DegenerateFrame,      ///< curve carries no usable frames
  SingularCurvature,    ///< |kappa| at or below eps_kappa where we divide by it
  BlowUp,               ///< |kappa| or |tau| exceeded the configured bound
  ConstraintViolation,  ///< soliton parameter constraint cannot be met
  DegenerateRuling,     ///< normal-surface E vanishes
  NullNormal,           ///< binormal-surface normal becomes null
  NotTimelike,          ///< binormal-surface formulas outside their timelike regime
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<std::size_t> index = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  /// Grid index (or step index, for evolve) where the failure was detected.
  std::optional<std::size_t> index() const noexcept { return index_; }
  /// Message without the error-code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
  std::optional<std::size_t> index_;
};

}  // namespace minkflow
