#pragma once

#include <stdexcept>
#include <string>

namespace finsler {

enum class ErrorCode {
  DivisionNearZero,
  SqrtDomain,
  OrderExceeded,
  DegenerateHessian,
  NullDirection,
  OutsideDomain,
  InvalidParameter,
  NotTimelike,
  SeedNotTimelike,
  ConeExit,
  NodeOutsideCone,
  LeftAdmissibleDomain,
  StepUnderflow,
  ModelNotLorentzian,
  StencilLeavesDomain,
  ConfigError,
  IOError,
};

inline const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::DivisionNearZero: return "DivisionNearZero";
    case ErrorCode::SqrtDomain: return "SqrtDomain";
    case ErrorCode::OrderExceeded: return "OrderExceeded";
    case ErrorCode::DegenerateHessian: return "DegenerateHessian";
    case ErrorCode::NullDirection: return "NullDirection";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::NotTimelike: return "NotTimelike";
    case ErrorCode::SeedNotTimelike: return "SeedNotTimelike";
    case ErrorCode::ConeExit: return "ConeExit";
    case ErrorCode::NodeOutsideCone: return "NodeOutsideCone";
    case ErrorCode::LeftAdmissibleDomain: return "LeftAdmissibleDomain";
    case ErrorCode::StepUnderflow: return "StepUnderflow";
    case ErrorCode::ModelNotLorentzian: return "ModelNotLorentzian";
    case ErrorCode::StencilLeavesDomain: return "StencilLeavesDomain";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IOError: return "IOError";
  }
  return "Unknown";
}

class FinslerError : public std::runtime_error {
 public:
  FinslerError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace finsler
