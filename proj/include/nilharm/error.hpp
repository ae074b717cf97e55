#pragma once

#include <stdexcept>
#include <string>

namespace nilharm {

enum class ErrorCode {
  JacobiViolation,
  NotNilpotent,
  DilationIncompatible,
  BadOrder,
  AntisymmetryViolation,
  DimensionMismatch,
  StepTooLarge,
  ZeroLambda,
  NegativeLambdaNeedsOneDimCenter,
  OddJumpSet,
  NonAntisymmetric,
  CenterNotOneDim,
  ZeroFunctionalOnCenter,
  NonFiniteValue,
  BoundaryMassExceeded,
  RadiusTooLargeForGrid,
  GridTooCoarse,
  GridTooSmallForTranslation,
  NotCalibrated,
  CalibrationResidualTooLarge,
  GridMismatch,
  NonLinearOperatorDetected,
  BadRealization,
  ConfigError,
  BadOperatorSpec,
  IOError
};

const char* error_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }
  const char* name() const { return error_name(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode c, const std::string& msg) { throw Error(c, msg); }

}  // namespace nilharm
