#include "resonance/errors.hpp"

namespace resonance {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::PoleAtPoint: return "PoleAtPoint";
    case ErrorCode::AffineGenerator: return "AffineGenerator";
    case ErrorCode::PoleInsideInterval: return "PoleInsideInterval";
    case ErrorCode::OverlappingDisks: return "OverlappingDisks";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::ContainmentViolation: return "ContainmentViolation";
    case ErrorCode::NonpositiveDerivative: return "NonpositiveDerivative";
    case ErrorCode::DimensionCap: return "DimensionCap";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::EnumerationCap: return "EnumerationCap";
    case ErrorCode::NonHyperbolicWord: return "NonHyperbolicWord";
    case ErrorCode::AmbiguousWinding: return "AmbiguousWinding";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

}  // namespace resonance
