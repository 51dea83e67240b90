#pragma once
#include <stdexcept>
#include <string>

namespace symapprox {

// Every failure mode the engine can report.  The C API maps these 1:1 onto
// integer codes; the CLI maps them onto exit codes (parse/validation -> 2,
// method failure -> 3, unresolved held forms -> 4).
enum class ErrorCode {
  Ok = 0,
  ParseError,
  InvalidArgument,
  UnboundSymbol,
  DomainError,
  HeldNode,
  SubstitutionIntoBoundVar,
  NotPolynomialInSymbol,
  UnsupportedDerivative,
  UnresolvedIntegral,
  PoleAtCenter,
  RewriteBudgetExceeded,
  SingularSystem,
  AmbiguousPivot,
  NonlocalDependence,
  DegenerateSequence,
  NoConvergence,
  NotRegular,
  DegenerateRoot,
  SingularPade,
  LinearBackendUnsupported,
  UnresolvedInnerProduct,
  GenericityViolation,
  InternalError,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + msg),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::Ok: return "Ok";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnboundSymbol: return "UnboundSymbol";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::HeldNode: return "HeldNode";
    case ErrorCode::SubstitutionIntoBoundVar: return "SubstitutionIntoBoundVar";
    case ErrorCode::NotPolynomialInSymbol: return "NotPolynomialInSymbol";
    case ErrorCode::UnsupportedDerivative: return "UnsupportedDerivative";
    case ErrorCode::UnresolvedIntegral: return "UnresolvedIntegral";
    case ErrorCode::PoleAtCenter: return "PoleAtCenter";
    case ErrorCode::RewriteBudgetExceeded: return "RewriteBudgetExceeded";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::AmbiguousPivot: return "AmbiguousPivot";
    case ErrorCode::NonlocalDependence: return "NonlocalDependence";
    case ErrorCode::DegenerateSequence: return "DegenerateSequence";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotRegular: return "NotRegular";
    case ErrorCode::DegenerateRoot: return "DegenerateRoot";
    case ErrorCode::SingularPade: return "SingularPade";
    case ErrorCode::LinearBackendUnsupported: return "LinearBackendUnsupported";
    case ErrorCode::UnresolvedInnerProduct: return "UnresolvedInnerProduct";
    case ErrorCode::GenericityViolation: return "GenericityViolation";
    case ErrorCode::InternalError: return "InternalError";
  }
  return "UnknownError";
}

}  // namespace symapprox
