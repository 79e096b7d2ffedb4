#include "fvl/error.hpp"

namespace fvl {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::UnknownSymbol: return "UNKNOWN_SYMBOL";
    case ErrorCode::ArityMismatch: return "ARITY_MISMATCH";
    case ErrorCode::BadPath: return "BAD_PATH";
    case ErrorCode::LatticeAxiomViolation: return "LATTICE_AXIOM_VIOLATION";
    case ErrorCode::PolarityViolation: return "POLARITY_VIOLATION";
    case ErrorCode::ImplicationLawViolation: return "IMPLICATION_LAW_VIOLATION";
    case ErrorCode::MissingMandatoryConnective: return "MISSING_MANDATORY_CONNECTIVE";
    case ErrorCode::FrameNotPartialOrder: return "FRAME_NOT_PARTIAL_ORDER";
    case ErrorCode::UndeclaredConstant: return "UNDECLARED_CONSTANT";
    case ErrorCode::UnboundVariable: return "UNBOUND_VARIABLE";
    case ErrorCode::NotPropositional: return "NOT_PROPOSITIONAL";
    case ErrorCode::BudgetExceeded: return "BUDGET_EXCEEDED";
    case ErrorCode::NotValid: return "NOT_VALID";
    case ErrorCode::PreconditionFailed: return "PRECONDITION_FAILED";
    case ErrorCode::StrongQuantifierPresent: return "STRONG_QUANTIFIER_PRESENT";
    case ErrorCode::Exhausted: return "EXHAUSTED";
    case ErrorCode::UninterpretedSymbol: return "UNINTERPRETED_SYMBOL";
    case ErrorCode::SymbolInBoth: return "SYMBOL_IN_BOTH";
    case ErrorCode::UnknownValidity: return "UNKNOWN_VALIDITY";
    case ErrorCode::PropInterpolationFailed: return "PROP_INTERPOLATION_FAILED";
    case ErrorCode::SmokeTestFailed: return "SMOKE_TEST_FAILED";
    case ErrorCode::Usage: return "USAGE";
  }
  return "UNKNOWN";
}

}  // namespace fvl
