#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace singclass {

enum class ErrorCode {
  InvalidArgument,
  NotAField,
  ReducibleModulus,
  FieldMismatch,
  DivisionByZero,
  NotALocalReparametrization,
  CharacteristicDividesM,
  NoRootInField,
  NoRationalRoot,
  ExtensionBoundExceeded,
  ZeroDegreeInput,
  NotPolynomial,
  NotPrimitive,
  NotInMaximalIdeal,
  TruncationTooSmall,
  JetExceedsTruncation,
  BranchesCoincide,
  BothOrdersDivisibleByP,
  GateFailed,
  ConductorOutOfTableRange,
  FieldExtensionRequired,
  OrbitBudgetExceeded,
  NoScalarSolution,
  SyntaxError,
  CoefficientNotInField,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace singclass
