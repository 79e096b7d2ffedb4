#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fvl/algebra.hpp"
#include "fvl/formula.hpp"

namespace fvl {

struct SymbolDecl {
  std::string name;
  std::size_t arity;
};

// Predicate and function symbols with arities; 0-ary functions are object
// constants. Declaration order is significant for term enumeration.
class PredicateLanguage {
public:
  PredicateLanguage() = default;
  PredicateLanguage(std::vector<SymbolDecl> predicates, std::vector<SymbolDecl> functions);

  const std::vector<SymbolDecl>& predicates() const { return predicates_; }
  const std::vector<SymbolDecl>& functions() const { return functions_; }
  const SymbolDecl* predicate(std::string_view name) const;
  const SymbolDecl* function(std::string_view name) const;
  bool has_object_constant() const;

  void add_predicate(SymbolDecl decl);
  void add_function(SymbolDecl decl);
  // Union; arity clashes raise ARITY_MISMATCH.
  PredicateLanguage merged(const PredicateLanguage& other) const;

private:
  std::vector<SymbolDecl> predicates_;
  std::vector<SymbolDecl> functions_;
};

struct ParseOptions {
  // When set, every predicate/function symbol must be declared here.
  // Otherwise arities are inferred and must be used consistently.
  const PredicateLanguage* language = nullptr;
  // Identifiers that are object variables even where unbound.
  std::set<std::string> free_object_vars;
};

// Grammar, loosest first:
//   A -> B        right-associative
//   A | B         left-associative
//   A & B         left-associative
//   forall x. A   prefix; scope is the following unary formula
//   exists x. A
//   (A)  #const  name(A, ...)  P(t, ...)  P  p
Formula parse_formula(std::string_view text, const PolaritySignature& signature, const ParseOptions& options = {});

// Object-level bookkeeping.
std::vector<std::string> prop_variables(const Formula& f);  // first-occurrence order
std::vector<std::string> constants_used(const Formula& f);
std::set<std::string> free_object_variables(const Formula& f);
PredicateLanguage language_of(const Formula& f);  // first-occurrence order
std::vector<Term> ground_terms(const Formula& f);  // distinct, first-occurrence pre-order

using Path = std::vector<std::size_t>;

const Formula& subformula_at(const Formula& f, const Path& path);
Formula replace_at(const Formula& f, const Path& path, const Formula& replacement);
Polarity polarity_of(const Formula& f, const Path& path, const PolaritySignature& signature);

struct QuantifierOccurrence {
  Path path;
  FormulaKind quantifier;  // Forall or Exists
  std::string variable;
  Polarity polarity;
  bool strong;
};

// Pre-order (outermost first).
std::vector<QuantifierOccurrence> classify_quantifiers(const Formula& f, const PolaritySignature& signature);
bool has_strong_quantifier(const Formula& f, const PolaritySignature& signature);

// Capture-avoiding simultaneous substitution of object variables.
Formula substitute(const Formula& f, const std::map<std::string, Term>& mapping);
Term substitute(const Term& t, const std::map<std::string, Term>& mapping);
// Simultaneous substitution of propositional variables.
Formula substitute_prop(const Formula& f, const std::map<std::string, Formula>& mapping);
// Replaces every occurrence of a ground term by another term.
Formula replace_term(const Formula& f, const Term& from, const Term& to);

// The signature with only the three mandatory connectives.
const PolaritySignature& basic_signature();

}  // namespace fvl
