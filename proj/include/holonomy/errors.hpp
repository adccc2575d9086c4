#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace holonomy {

enum class ErrorCode {
  CutLocus,
  SingularInput,
  InvalidElement,
  InvalidArgument,
  OutOfChart,
  StepCountTooSmall,
  PathNotClosed,
  RadiusOutOfRange,
  EndpointMismatch,
  WrongGroup,
  ChartNotBox,
  DirectionNotUnit,
  OutOfDisk,
  FillingMissing,
  NumericalBreakdown,
};

std::string_view to_string(ErrorCode code);

// Every precondition violation in the library is reported through this type;
// code() lets callers (the CLI in particular) map failures to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised when a logarithm would have to choose between several minimal
// geodesics. `distance` is the common length of all candidates.
class CutLocusError : public Error {
 public:
  CutLocusError(const std::string& what, double distance);

  double distance() const noexcept { return distance_; }

 private:
  double distance_;
};

}  // namespace holonomy
