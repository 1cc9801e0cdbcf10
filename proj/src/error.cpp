#include "singclass/error.hpp"

namespace singclass {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotAField: return "NotAField";
    case ErrorCode::ReducibleModulus: return "ReducibleModulus";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NotALocalReparametrization: return "NotALocalReparametrization";
    case ErrorCode::CharacteristicDividesM: return "CharacteristicDividesM";
    case ErrorCode::NoRootInField: return "NoRootInField";
    case ErrorCode::NoRationalRoot: return "NoRationalRoot";
    case ErrorCode::ExtensionBoundExceeded: return "ExtensionBoundExceeded";
    case ErrorCode::ZeroDegreeInput: return "ZeroDegreeInput";
    case ErrorCode::NotPolynomial: return "NotPolynomial";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::NotInMaximalIdeal: return "NotInMaximalIdeal";
    case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorCode::JetExceedsTruncation: return "JetExceedsTruncation";
    case ErrorCode::BranchesCoincide: return "BranchesCoincide";
    case ErrorCode::BothOrdersDivisibleByP: return "BothOrdersDivisibleByP";
    case ErrorCode::GateFailed: return "GateFailed";
    case ErrorCode::ConductorOutOfTableRange: return "ConductorOutOfTableRange";
    case ErrorCode::FieldExtensionRequired: return "FieldExtensionRequired";
    case ErrorCode::OrbitBudgetExceeded: return "OrbitBudgetExceeded";
    case ErrorCode::NoScalarSolution: return "NoScalarSolution";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::CoefficientNotInField: return "CoefficientNotInField";
  }
  return "Unknown";
}

}  // namespace singclass
