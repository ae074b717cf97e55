#include "nilharm/error.hpp"

namespace nilharm {

const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::JacobiViolation: return "JacobiViolation";
    case ErrorCode::NotNilpotent: return "NotNilpotent";
    case ErrorCode::DilationIncompatible: return "DilationIncompatible";
    case ErrorCode::BadOrder: return "BadOrder";
    case ErrorCode::AntisymmetryViolation: return "AntisymmetryViolation";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::ZeroLambda: return "ZeroLambda";
    case ErrorCode::NegativeLambdaNeedsOneDimCenter: return "NegativeLambdaNeedsOneDimCenter";
    case ErrorCode::OddJumpSet: return "OddJumpSet";
    case ErrorCode::NonAntisymmetric: return "NonAntisymmetric";
    case ErrorCode::CenterNotOneDim: return "CenterNotOneDim";
    case ErrorCode::ZeroFunctionalOnCenter: return "ZeroFunctionalOnCenter";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::BoundaryMassExceeded: return "BoundaryMassExceeded";
    case ErrorCode::RadiusTooLargeForGrid: return "RadiusTooLargeForGrid";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::GridTooSmallForTranslation: return "GridTooSmallForTranslation";
    case ErrorCode::NotCalibrated: return "NotCalibrated";
    case ErrorCode::CalibrationResidualTooLarge: return "CalibrationResidualTooLarge";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::NonLinearOperatorDetected: return "NonLinearOperatorDetected";
    case ErrorCode::BadRealization: return "BadRealization";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::BadOperatorSpec: return "BadOperatorSpec";
    case ErrorCode::IOError: return "IOError";
  }
  return "Unknown";
}

}  // namespace nilharm
