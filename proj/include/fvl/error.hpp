#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fvl {

enum class ErrorCode {
  ParseError,
  UnknownSymbol,
  ArityMismatch,
  BadPath,
  LatticeAxiomViolation,
  PolarityViolation,
  ImplicationLawViolation,
  MissingMandatoryConnective,
  FrameNotPartialOrder,
  UndeclaredConstant,
  UnboundVariable,
  NotPropositional,
  BudgetExceeded,
  NotValid,
  PreconditionFailed,
  StrongQuantifierPresent,
  Exhausted,
  UninterpretedSymbol,
  SymbolInBoth,
  UnknownValidity,
  PropInterpolationFailed,
  SmokeTestFailed,
  Usage,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this type. `witness` carries the
// concrete tuple or pair that triggered the failure, rendered as text.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message, std::vector<std::string> witness = {})
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        witness_(std::move(witness)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::vector<std::string>& witness() const noexcept { return witness_; }

private:
  ErrorCode code_;
  std::vector<std::string> witness_;
};

}  // namespace fvl
