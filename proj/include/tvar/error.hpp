#pragma once

#include <stdexcept>
#include <string>

namespace tvar {

enum class ErrorKind {
  DimensionMismatch,
  UnsupportedRank,
  TailMismatch,
  OutsideWeightCone,
  AffineCurve,
  NonIntegral,
  NonZeroDegree,
  PointNotOnCurve,
  SingularCurve,
  WrongShape,
  NotProper,
  UnsupportedSupport,
  Parse,
  Invalid,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::DimensionMismatch: return "dimension mismatch";
    case ErrorKind::UnsupportedRank: return "unsupported rank";
    case ErrorKind::TailMismatch: return "tail cone mismatch";
    case ErrorKind::OutsideWeightCone: return "outside weight cone";
    case ErrorKind::AffineCurve: return "affine curve model";
    case ErrorKind::NonIntegral: return "non-integral divisor";
    case ErrorKind::NonZeroDegree: return "nonzero degree";
    case ErrorKind::PointNotOnCurve: return "point not on curve";
    case ErrorKind::SingularCurve: return "singular curve";
    case ErrorKind::WrongShape: return "wrong shape";
    case ErrorKind::NotProper: return "not proper";
    case ErrorKind::UnsupportedSupport: return "unsupported support";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Invalid: return "invalid input";
  }
  return "error";
}

/// All library failures are reported through this type; `kind()` is stable,
/// the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace tvar
