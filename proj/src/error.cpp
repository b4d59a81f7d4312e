#include "circlering/error.hpp"

namespace circlering {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::DescriptorMismatch: return "DescriptorMismatch";
    case ErrorCode::InvalidDescriptor: return "InvalidDescriptor";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotASquare: return "NotASquare";
    case ErrorCode::FactorBoundExceeded: return "FactorBoundExceeded";
    case ErrorCode::ZeroRadius: return "ZeroRadius";
    case ErrorCode::InvalidRotationParams: return "InvalidRotationParams";
    case ErrorCode::PointNotOnCircle: return "PointNotOnCircle";
    case ErrorCode::ParameterSquaresToMinusOne: return "ParameterSquaresToMinusOne";
    case ErrorCode::InfiniteField: return "InfiniteField";
    case ErrorCode::WrongFieldKind: return "WrongFieldKind";
    case ErrorCode::NotPerfect: return "NotPerfect";
    case ErrorCode::CircleTooLarge: return "CircleTooLarge";
    case ErrorCode::NotCircularPointSet: return "NotCircularPointSet";
    case ErrorCode::CircleMismatch: return "CircleMismatch";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::DegenerateBasePoint: return "DegenerateBasePoint";
    case ErrorCode::MalformedMessage: return "MalformedMessage";
    case ErrorCode::VersionMismatch: return "VersionMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace circlering
