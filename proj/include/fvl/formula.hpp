#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace fvl {

struct Term {
  enum class Kind { Var, App };

  Kind kind = Kind::App;
  std::string name;
  std::vector<Term> args;  // empty for variables and object constants

  static Term var(std::string name) { return {Kind::Var, std::move(name), {}}; }
  static Term app(std::string name, std::vector<Term> args = {}) { return {Kind::App, std::move(name), std::move(args)}; }

  bool is_var() const { return kind == Kind::Var; }
  bool is_ground() const;
  std::size_t size() const;  // node count

  friend bool operator==(const Term&, const Term&) = default;
};

std::string render(const Term& t);

enum class FormulaKind { Variable, Constant, Atom, Connective, Forall, Exists };

class Formula;

struct FormulaNode {
  FormulaKind kind;
  std::string name;               // variable, constant, predicate, connective or bound variable
  std::vector<Term> terms;        // atom arguments
  std::vector<Formula> children;  // connective arguments; quantifier body at [0]
};

// Immutable formula handle with value semantics (shared, structurally compared).
class Formula {
public:
  // Placeholder: the variable with an empty name.
  Formula();
  static Formula variable(std::string name);
  static Formula constant(std::string name);
  static Formula atom(std::string predicate, std::vector<Term> terms = {});
  static Formula connective(std::string name, std::vector<Formula> args);
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);
  static Formula implies(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula conj(Formula a, Formula b);
  // (a -> b) & (b -> a); an abbreviation, not a connective.
  static Formula iff(Formula a, Formula b);
  // Left-nested chains; the list must be non-empty.
  static Formula big_or(const std::vector<Formula>& parts);
  static Formula big_and(const std::vector<Formula>& parts);

  FormulaKind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  const std::vector<Term>& terms() const { return node_->terms; }
  const std::vector<Formula>& children() const { return node_->children; }
  const Formula& child(std::size_t i) const { return node_->children[i]; }
  const Formula& body() const { return node_->children[0]; }

  bool is_quantifier() const { return kind() == FormulaKind::Forall || kind() == FormulaKind::Exists; }
  bool is_connective(std::string_view name) const { return kind() == FormulaKind::Connective && node_->name == name; }
  // No atoms, terms or quantifiers.
  bool is_propositional() const;
  bool is_quantifier_free() const;
  std::size_t size() const;

  bool same_node(const Formula& other) const { return node_ == other.node_; }
  friend bool operator==(const Formula& a, const Formula& b);

private:
  explicit Formula(std::shared_ptr<const FormulaNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const FormulaNode> node_;
};

// Canonical ASCII rendering; parse_formula(render(f)) == f.
std::string render(const Formula& f);

}  // namespace fvl
