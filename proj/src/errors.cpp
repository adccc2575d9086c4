#include "holonomy/errors.hpp"

namespace holonomy {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::CutLocus: return "CutLocus";
    case ErrorCode::SingularInput: return "SingularInput";
    case ErrorCode::InvalidElement: return "InvalidElement";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::OutOfChart: return "OutOfChart";
    case ErrorCode::StepCountTooSmall: return "StepCountTooSmall";
    case ErrorCode::PathNotClosed: return "PathNotClosed";
    case ErrorCode::RadiusOutOfRange: return "RadiusOutOfRange";
    case ErrorCode::EndpointMismatch: return "EndpointMismatch";
    case ErrorCode::WrongGroup: return "WrongGroup";
    case ErrorCode::ChartNotBox: return "ChartNotBox";
    case ErrorCode::DirectionNotUnit: return "DirectionNotUnit";
    case ErrorCode::OutOfDisk: return "OutOfDisk";
    case ErrorCode::FillingMissing: return "FillingMissing";
    case ErrorCode::NumericalBreakdown: return "NumericalBreakdown";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

CutLocusError::CutLocusError(const std::string& what, double distance)
    : Error(ErrorCode::CutLocus, what), distance_(distance) {}

}  // namespace holonomy
