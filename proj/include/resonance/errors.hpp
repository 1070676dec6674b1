#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace resonance {

enum class ErrorCode {
  InvalidParameter,
  PoleAtPoint,
  AffineGenerator,
  PoleInsideInterval,
  OverlappingDisks,
  NoConvergence,
  ContainmentViolation,
  NonpositiveDerivative,
  DimensionCap,
  Overflow,
  EnumerationCap,
  NonHyperbolicWord,
  AmbiguousWinding,
  InvalidConfig,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for all library failures; `code()` tells callers
/// (the CLI in particular) which contract was broken.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace resonance
