#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fvl/interp.hpp"
#include "fvl/syntax.hpp"

namespace fvl {

// Finite structure: predicate tables map domain tuples (lexicographic, first
// argument most significant) to lattice elements, function tables to domain
// indices.
struct FoStructure {
  std::size_t domain_size = 1;
  std::map<std::string, std::vector<Elem>> predicates;
  std::map<std::string, std::vector<std::size_t>> functions;
};

using Assignment = std::map<std::string, std::size_t>;

// Throws UNINTERPRETED_SYMBOL, UNBOUND_VARIABLE, UNDECLARED_CONSTANT.
Elem fo_eval(const Formula& f, const Lattice& lattice, const FoStructure& s, const Assignment& v = {});
std::size_t fo_eval_term(const Term& t, const FoStructure& s, const Assignment& v);

struct SkolemEntry {
  Path path;  // of the quantifier in the input formula
  FormulaKind quantifier;
  std::string variable;
  std::vector<std::string> functions;  // the family f_1..f_m
  std::vector<std::string> arguments;  // weakly quantified variables in scope
};

struct SkolemResult {
  Formula formula;
  std::vector<SkolemEntry> record;
};

// Outside-in: a strong exists becomes a join, a strong forall a meet, over
// m = |L| fresh Skolem terms. Fresh names are c1, c2, ... (constants) and
// f1, f2, ... (functions), skipping names in the formula and `avoid`.
SkolemResult skolemize(const Formula& f, const Lattice& lattice, const std::set<std::string>& avoid = {});

struct TermEnumeration {
  std::vector<Term> terms;
  bool exhausted = false;  // the language has fewer closed terms than requested
};

// By size, then symbol declaration order, then argument indices. Adds the
// constant c0 when the language has none.
TermEnumeration enumerate_closed_terms(const PredicateLanguage& language, std::size_t k);
PredicateLanguage with_default_constant(const PredicateLanguage& language);

// Instance sets per quantifier occurrence (by path in E); unset means 1..n.
using InstanceSets = std::map<Path, std::vector<std::size_t>>;

// Inside-out replacement of weak quantifiers by joins/meets over the first n
// closed terms of E's language. Throws STRONG_QUANTIFIER_PRESENT.
Formula expand_n(const Formula& E, std::size_t n, const PolaritySignature& signature,
                 const InstanceSets& instances = {});

struct Abstraction {
  Formula formula;
  std::vector<std::pair<std::string, Formula>> dictionary;  // p_i and its ground atom
};

// Ground atoms become p1, p2, ... by first occurrence.
Abstraction abstract_atoms(const Formula& f);
Abstraction abstract_atoms(const Formula& f, std::vector<std::pair<std::string, Formula>> dictionary);
Formula concretize(const Formula& f, const std::vector<std::pair<std::string, Formula>>& dictionary);

struct ExpansionCheck {
  bool valid = false;
  Abstraction abstraction;
  std::optional<Valuation> countervaluation;
};

ExpansionCheck check_valid_expansion(const Formula& En, const Lattice& lattice, std::size_t var_cap = 24);

struct HerbrandResult {
  bool found = false;
  std::size_t n = 0;
  Formula expansion;  // E_n as defined
  Formula pruned;     // instances dropped greedily while valid
  std::vector<std::size_t> tried;
  bool terms_exhausted = false;
};

HerbrandResult find_herbrand_expansion(const Formula& E, const Lattice& lattice, std::size_t max_n,
                                       std::size_t var_cap = 24);

struct Elimination {
  Term term;
  std::string variable;
  FormulaKind quantifier;
};

struct GeneralizeResult {
  Formula interpolant;
  std::vector<Elimination> steps;
};

// Replaces maximal terms headed by non-common symbols by quantified
// variables z1, z2, ... . `common` overrides the computed common symbols.
GeneralizeResult generalize_interpolant(const Formula& ground, const Formula& skA, const Formula& skB,
                                        const std::optional<std::set<std::string>>& common = std::nullopt);

struct SmokeOptions {
  std::size_t max_domain = 2;
  std::size_t max_structures = 50000;  // per domain size; sampled beyond
  std::uint64_t seed = 1;
};

struct SmokeReport {
  std::size_t structures = 0;
  bool sampled = false;
  bool passed = true;
  std::string failure;
};

// Checks A <= I <= B in every (or a sample of) finite structure(s).
SmokeReport smoke_test(const Formula& A, const Formula& I, const Formula& B, const Lattice& lattice,
                       const SmokeOptions& options = {});

struct FoOptions {
  std::size_t max_n = 8;
  std::size_t var_cap = 24;
  InterpolationOptions prop;
  SmokeOptions smoke;
};

struct FoInterpolation {
  Formula A, B;
  SkolemResult skolem;
  Formula skA, skB;
  HerbrandResult herbrand;
  Abstraction abstraction;  // of the pruned expansion
  Formula prop_a, prop_b;
  InterpolationVerdict prop;
  Formula ground_interpolant;
  GeneralizeResult generalized;
  std::vector<std::string> notes;
  SmokeReport smoke;
};

// Throws UNKNOWN_VALIDITY, PROP_INTERPOLATION_FAILED, SMOKE_TEST_FAILED.
FoInterpolation fo_interpolate(const Formula& implication, const Lattice& lattice, const FoOptions& options = {});

// Equality up to renaming of bound variables.
bool alpha_equivalent(const Formula& a, const Formula& b);

}  // namespace fvl
