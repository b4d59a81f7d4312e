#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace circlering {

enum class ErrorCode {
  DivisionByZero,
  DescriptorMismatch,
  InvalidDescriptor,
  ParseError,
  NotASquare,
  FactorBoundExceeded,
  ZeroRadius,
  InvalidRotationParams,
  PointNotOnCircle,
  ParameterSquaresToMinusOne,
  InfiniteField,
  WrongFieldKind,
  NotPerfect,
  CircleTooLarge,
  NotCircularPointSet,
  CircleMismatch,
  NotCoprime,
  DegenerateBasePoint,
  MalformedMessage,
  VersionMismatch,
  InvalidArgument,
};

/// Stable name of the code, e.g. "DivisionByZero"; used in CLI error records.
std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace circlering
