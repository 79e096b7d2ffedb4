#include "fvl/formula.hpp"

#include <stdexcept>

#include "fvl/algebra.hpp"

namespace fvl {

bool Term::is_ground() const {
  if (kind == Kind::Var) return false;
  for (const auto& a : args)
    if (!a.is_ground()) return false;
  return true;
}

std::size_t Term::size() const {
  std::size_t n = 1;
  for (const auto& a : args) n += a.size();
  return n;
}

std::string render(const Term& t) {
  std::string s = t.name;
  if (t.args.empty()) return s;
  s += '(';
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) s += ',';
    s += render(t.args[i]);
  }
  return s + ')';
}

Formula::Formula() {
  static const auto empty = std::make_shared<const FormulaNode>(FormulaNode{FormulaKind::Variable, "", {}, {}});
  node_ = empty;
}

Formula Formula::variable(std::string name) {
  return Formula(std::make_shared<const FormulaNode>(FormulaNode{FormulaKind::Variable, std::move(name), {}, {}}));
}

Formula Formula::constant(std::string name) {
  return Formula(std::make_shared<const FormulaNode>(FormulaNode{FormulaKind::Constant, std::move(name), {}, {}}));
}

Formula Formula::atom(std::string predicate, std::vector<Term> terms) {
  return Formula(
      std::make_shared<const FormulaNode>(FormulaNode{FormulaKind::Atom, std::move(predicate), std::move(terms), {}}));
}

Formula Formula::connective(std::string name, std::vector<Formula> args) {
  return Formula(
      std::make_shared<const FormulaNode>(FormulaNode{FormulaKind::Connective, std::move(name), {}, std::move(args)}));
}

Formula Formula::forall(std::string var, Formula body) {
  return Formula(std::make_shared<const FormulaNode>(FormulaNode{FormulaKind::Forall, std::move(var), {}, {std::move(body)}}));
}

Formula Formula::exists(std::string var, Formula body) {
  return Formula(std::make_shared<const FormulaNode>(FormulaNode{FormulaKind::Exists, std::move(var), {}, {std::move(body)}}));
}

Formula Formula::implies(Formula a, Formula b) { return connective(std::string(kImplies), {std::move(a), std::move(b)}); }
Formula Formula::disj(Formula a, Formula b) { return connective(std::string(kJoin), {std::move(a), std::move(b)}); }
Formula Formula::conj(Formula a, Formula b) { return connective(std::string(kMeet), {std::move(a), std::move(b)}); }
Formula Formula::iff(Formula a, Formula b) { return conj(implies(a, b), implies(b, a)); }

Formula Formula::big_or(const std::vector<Formula>& parts) {
  if (parts.empty()) throw std::invalid_argument("big_or of no formulas");
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = disj(acc, parts[i]);
  return acc;
}

Formula Formula::big_and(const std::vector<Formula>& parts) {
  if (parts.empty()) throw std::invalid_argument("big_and of no formulas");
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = conj(acc, parts[i]);
  return acc;
}

bool Formula::is_propositional() const {
  switch (kind()) {
    case FormulaKind::Variable:
    case FormulaKind::Constant: return true;
    case FormulaKind::Connective:
      for (const auto& c : children())
        if (!c.is_propositional()) return false;
      return true;
    default: return false;
  }
}

bool Formula::is_quantifier_free() const {
  if (is_quantifier()) return false;
  for (const auto& c : children())
    if (!c.is_quantifier_free()) return false;
  return true;
}

std::size_t Formula::size() const {
  std::size_t n = 1;
  for (const auto& c : children()) n += c.size();
  return n;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.name() != b.name() || a.terms() != b.terms()) return false;
  if (a.children().size() != b.children().size()) return false;
  for (std::size_t i = 0; i < a.children().size(); ++i)
    if (!(a.child(i) == b.child(i))) return false;
  return true;
}

namespace {

int precedence(const Formula& f) {
  if (f.kind() != FormulaKind::Connective) return 4;
  if (f.name() == kImplies) return 1;
  if (f.name() == kJoin) return 2;
  if (f.name() == kMeet) return 3;
  return 4;
}

void render_into(const Formula& f, std::string& out);

void wrapped(const Formula& f, bool parens, std::string& out) {
  if (parens) out += '(';
  render_into(f, out);
  if (parens) out += ')';
}

void render_into(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case FormulaKind::Variable: out += f.name(); return;
    case FormulaKind::Constant: out += '#' + f.name(); return;
    case FormulaKind::Atom:
      out += f.name();
      if (!f.terms().empty()) {
        out += '(';
        for (std::size_t i = 0; i < f.terms().size(); ++i) {
          if (i) out += ',';
          out += render(f.terms()[i]);
        }
        out += ')';
      }
      return;
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      out += f.kind() == FormulaKind::Forall ? "forall " : "exists ";
      out += f.name();
      out += '.';
      if (precedence(f.body()) == 4) {
        out += ' ';
        render_into(f.body(), out);
      } else {
        wrapped(f.body(), true, out);
      }
      return;
    case FormulaKind::Connective: break;
  }
  const int p = precedence(f);
  if (p == 4 || f.children().size() != 2) {
    out += f.name();
    out += '(';
    for (std::size_t i = 0; i < f.children().size(); ++i) {
      if (i) out += ',';
      render_into(f.child(i), out);
    }
    out += ')';
    return;
  }
  const int lp = precedence(f.child(0));
  const int rp = precedence(f.child(1));
  wrapped(f.child(0), p == 1 ? lp <= 1 : lp < p, out);
  out += ' ';
  out += f.name();
  out += ' ';
  wrapped(f.child(1), p == 1 ? false : rp <= p, out);
}

}  // namespace

std::string render(const Formula& f) {
  std::string out;
  render_into(f, out);
  return out;
}

}  // namespace fvl
