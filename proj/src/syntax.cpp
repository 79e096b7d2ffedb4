#include "fvl/syntax.hpp"

#include <cctype>
#include <functional>

#include "fvl/error.hpp"

namespace fvl {

PredicateLanguage::PredicateLanguage(std::vector<SymbolDecl> predicates, std::vector<SymbolDecl> functions) {
  for (auto& p : predicates) add_predicate(std::move(p));
  for (auto& f : functions) add_function(std::move(f));
}

const SymbolDecl* PredicateLanguage::predicate(std::string_view name) const {
  for (const auto& p : predicates_)
    if (p.name == name) return &p;
  return nullptr;
}

const SymbolDecl* PredicateLanguage::function(std::string_view name) const {
  for (const auto& f : functions_)
    if (f.name == name) return &f;
  return nullptr;
}

bool PredicateLanguage::has_object_constant() const {
  for (const auto& f : functions_)
    if (f.arity == 0) return true;
  return false;
}

void PredicateLanguage::add_predicate(SymbolDecl decl) {
  if (function(decl.name)) throw Error(ErrorCode::ParseError, "'" + decl.name + "' is both predicate and function");
  if (const auto* p = predicate(decl.name)) {
    if (p->arity != decl.arity) throw Error(ErrorCode::ArityMismatch, "predicate '" + decl.name + "' used with two arities");
    return;
  }
  predicates_.push_back(std::move(decl));
}

void PredicateLanguage::add_function(SymbolDecl decl) {
  if (predicate(decl.name)) throw Error(ErrorCode::ParseError, "'" + decl.name + "' is both predicate and function");
  if (const auto* f = function(decl.name)) {
    if (f->arity != decl.arity) throw Error(ErrorCode::ArityMismatch, "function '" + decl.name + "' used with two arities");
    return;
  }
  functions_.push_back(std::move(decl));
}

PredicateLanguage PredicateLanguage::merged(const PredicateLanguage& other) const {
  PredicateLanguage out = *this;
  for (const auto& p : other.predicates_) out.add_predicate(p);
  for (const auto& f : other.functions_) out.add_function(f);
  return out;
}

const PolaritySignature& basic_signature() {
  static const PolaritySignature sig({
      {std::string(kJoin), {Polarity::Positive, Polarity::Positive}},
      {std::string(kMeet), {Polarity::Positive, Polarity::Positive}},
      {std::string(kImplies), {Polarity::Negative, Polarity::Positive}},
  });
  return sig;
}

namespace {

enum class Tok { Ident, Hash, LParen, RParen, Comma, Dot, Arrow, Or, And, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto ident_start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
  auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (ident_start(c)) {
      while (i < s.size() && ident_char(s[i])) ++i;
      out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      out.push_back({Tok::Arrow, "->", start});
      i += 2;
      continue;
    }
    if (c == '#') {
      // Constant names may start with a digit (#0, #1).
      out.push_back({Tok::Hash, "#", start});
      ++i;
      const std::size_t name_start = i;
      while (i < s.size() && ident_char(s[i])) ++i;
      if (i > name_start) out.push_back({Tok::Ident, std::string(s.substr(name_start, i - name_start)), name_start});
      continue;
    }
    Tok kind;
    switch (c) {
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case ',': kind = Tok::Comma; break;
      case '.': kind = Tok::Dot; break;
      case '|': kind = Tok::Or; break;
      case '&': kind = Tok::And; break;
      default:
        throw Error(ErrorCode::ParseError, "at offset " + std::to_string(start) + ": unexpected character '" +
                                               std::string(1, c) + "'");
    }
    out.push_back({kind, std::string(1, c), start});
    ++i;
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

bool is_upper(const std::string& name) { return std::isupper(static_cast<unsigned char>(name[0])) != 0; }

class Parser {
public:
  Parser(std::string_view text, const PolaritySignature& sig, const ParseOptions& options)
      : tokens_(lex(text)), sig_(sig), options_(options) {}

  Formula parse() {
    Formula f = implication();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

private:
  const Token& peek(std::size_t ahead = 0) const { return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)]; }
  const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& message, ErrorCode code = ErrorCode::ParseError) const {
    throw Error(code, "at offset " + std::to_string(peek().pos) + ": " + message);
  }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what);
    next();
  }

  Formula implication() {
    Formula left = disjunction();
    if (peek().kind == Tok::Arrow) {
      next();
      return Formula::implies(left, implication());
    }
    return left;
  }

  Formula disjunction() {
    Formula acc = conjunction();
    while (peek().kind == Tok::Or) {
      next();
      acc = Formula::disj(acc, conjunction());
    }
    return acc;
  }

  Formula conjunction() {
    Formula acc = unary();
    while (peek().kind == Tok::And) {
      next();
      acc = Formula::conj(acc, unary());
    }
    return acc;
  }

  Formula unary() {
    if (peek().kind == Tok::Ident && (peek().text == "forall" || peek().text == "exists")) {
      const bool is_forall = next().text == "forall";
      if (peek().kind != Tok::Ident || peek().text == "forall" || peek().text == "exists")
        fail("expected a variable after quantifier");
      std::string var = next().text;
      note_object(var);
      expect(Tok::Dot, "'.' after quantified variable");
      bound_.push_back(var);
      Formula body = unary();
      bound_.pop_back();
      return is_forall ? Formula::forall(var, body) : Formula::exists(var, body);
    }
    return primary();
  }

  Formula primary() {
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      next();
      Formula f = implication();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (t.kind == Tok::Hash) {
      next();
      if (peek().kind != Tok::Ident) fail("expected a constant name after '#'");
      return Formula::constant(next().text);
    }
    if (t.kind != Tok::Ident) fail(t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
    const std::string name = next().text;
    const ConnectiveDecl* decl = sig_.find(name);
    if (decl && !decl->is_infix() && (peek().kind == Tok::LParen || decl->arity() == 0)) {
      std::vector<Formula> args;
      if (peek().kind == Tok::LParen) {
        next();
        if (peek().kind != Tok::RParen) {
          args.push_back(implication());
          while (peek().kind == Tok::Comma) {
            next();
            args.push_back(implication());
          }
        }
        expect(Tok::RParen, "')'");
      }
      if (args.size() != decl->arity())
        fail("connective '" + name + "' takes " + std::to_string(decl->arity()) + " arguments", ErrorCode::ArityMismatch);
      return Formula::connective(name, std::move(args));
    }
    if (is_upper(name)) {
      std::vector<Term> terms;
      if (peek().kind == Tok::LParen) {
        next();
        terms.push_back(term());
        while (peek().kind == Tok::Comma) {
          next();
          terms.push_back(term());
        }
        expect(Tok::RParen, "')'");
      }
      declare_predicate(name, terms.size());
      return Formula::atom(name, std::move(terms));
    }
    if (peek().kind == Tok::LParen) fail("unknown connective '" + name + "'", ErrorCode::UnknownSymbol);
    if (is_object_var(name) || objects_.count(name))
      fail("'" + name + "' is an object symbol used as a propositional variable");
    props_.insert(name);
    return Formula::variable(name);
  }

  Term term() {
    if (peek().kind != Tok::Ident) fail("expected a term");
    const std::size_t at = peek().pos;
    const std::string name = next().text;
    if (name == "forall" || name == "exists") fail("quantifier keyword used as a term");
    if (is_upper(name)) fail("function symbols and variables begin lowercase");
    note_object(name);
    if (peek().kind == Tok::LParen) {
      next();
      std::vector<Term> args{term()};
      while (peek().kind == Tok::Comma) {
        next();
        args.push_back(term());
      }
      expect(Tok::RParen, "')'");
      declare_function(name, args.size(), at);
      return Term::app(name, std::move(args));
    }
    if (is_object_var(name)) return Term::var(name);
    declare_function(name, 0, at);
    return Term::app(name);
  }

  bool is_object_var(const std::string& name) const {
    for (const auto& b : bound_)
      if (b == name) return true;
    return options_.free_object_vars.count(name) > 0;
  }

  void note_object(const std::string& name) {
    if (props_.count(name)) fail("'" + name + "' is a propositional variable used as an object symbol");
    objects_.insert(name);
  }

  void declare_predicate(const std::string& name, std::size_t arity) {
    if (options_.language) {
      const SymbolDecl* p = options_.language->predicate(name);
      if (!p) fail("unknown predicate '" + name + "'", ErrorCode::UnknownSymbol);
      if (p->arity != arity) fail("predicate '" + name + "' has arity " + std::to_string(p->arity), ErrorCode::ArityMismatch);
      return;
    }
    try {
      inferred_.add_predicate({name, arity});
    } catch (const Error& e) {
      fail(e.what(), e.code());
    }
  }

  void declare_function(const std::string& name, std::size_t arity, std::size_t) {
    if (options_.language) {
      const SymbolDecl* f = options_.language->function(name);
      if (!f) fail("unknown function symbol '" + name + "'", ErrorCode::UnknownSymbol);
      if (f->arity != arity) fail("function '" + name + "' has arity " + std::to_string(f->arity), ErrorCode::ArityMismatch);
      return;
    }
    try {
      inferred_.add_function({name, arity});
    } catch (const Error& e) {
      fail(e.what(), e.code());
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const PolaritySignature& sig_;
  const ParseOptions& options_;
  std::vector<std::string> bound_;
  std::set<std::string> props_;
  std::set<std::string> objects_;
  PredicateLanguage inferred_;
};

void collect_terms_language(const Term& t, PredicateLanguage& lang) {
  if (t.is_var()) return;
  lang.add_function({t.name, t.args.size()});
  for (const auto& a : t.args) collect_terms_language(a, lang);
}

void collect_ground(const Term& t, std::vector<Term>& out) {
  if (t.is_ground()) {
    bool seen = false;
    for (const auto& o : out)
      if (o == t) seen = true;
    if (!seen) out.push_back(t);
  }
  for (const auto& a : t.args) collect_ground(a, out);
}

void walk(const Formula& f, const std::function<void(const Formula&)>& visit) {
  visit(f);
  for (const auto& c : f.children()) walk(c, visit);
}

bool term_mentions(const Term& t, const std::string& var) {
  if (t.is_var()) return t.name == var;
  for (const auto& a : t.args)
    if (term_mentions(a, var)) return true;
  return false;
}

void term_vars(const Term& t, std::set<std::string>& out) {
  if (t.is_var()) {
    out.insert(t.name);
    return;
  }
  for (const auto& a : t.args) term_vars(a, out);
}

void free_vars_into(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  if (f.kind() == FormulaKind::Atom) {
    std::set<std::string> vs;
    for (const auto& t : f.terms()) term_vars(t, vs);
    for (const auto& v : vs)
      if (!bound.count(v)) out.insert(v);
    return;
  }
  if (f.is_quantifier()) {
    const bool added = bound.insert(f.name()).second;
    free_vars_into(f.body(), bound, out);
    if (added) bound.erase(f.name());
    return;
  }
  for (const auto& c : f.children()) free_vars_into(c, bound, out);
}

Polarity connective_polarity(const Formula& f, std::size_t index, const PolaritySignature& sig) {
  const ConnectiveDecl* decl = sig.find(f.name());
  if (!decl) decl = basic_signature().find(f.name());
  if (!decl) throw Error(ErrorCode::UnknownSymbol, "connective '" + f.name() + "' is not in the signature");
  if (index >= decl->arity()) throw Error(ErrorCode::BadPath, "argument index out of range");
  return decl->polarity[index];
}

void classify_into(const Formula& f, Path& path, Polarity pol, const PolaritySignature& sig,
                   std::vector<QuantifierOccurrence>& out) {
  if (f.is_quantifier()) {
    const bool strong = (f.kind() == FormulaKind::Forall) == (pol == Polarity::Positive);
    out.push_back({path, f.kind(), f.name(), pol, strong});
    path.push_back(0);
    classify_into(f.body(), path, pol, sig, out);
    path.pop_back();
    return;
  }
  if (f.kind() != FormulaKind::Connective) return;
  for (std::size_t i = 0; i < f.children().size(); ++i) {
    path.push_back(i);
    classify_into(f.child(i), path, pol * connective_polarity(f, i, sig), sig, out);
    path.pop_back();
  }
}

Formula rebuild(const Formula& f, std::vector<Formula> children) {
  switch (f.kind()) {
    case FormulaKind::Connective: return Formula::connective(f.name(), std::move(children));
    case FormulaKind::Forall: return Formula::forall(f.name(), std::move(children[0]));
    case FormulaKind::Exists: return Formula::exists(f.name(), std::move(children[0]));
    default: return f;
  }
}

Term replace_in_term(const Term& t, const Term& from, const Term& to) {
  if (t == from) return to;
  if (t.args.empty()) return t;
  Term copy = t;
  for (auto& a : copy.args) a = replace_in_term(a, from, to);
  return copy;
}

}  // namespace

Formula parse_formula(std::string_view text, const PolaritySignature& signature, const ParseOptions& options) {
  return Parser(text, signature, options).parse();
}

std::vector<std::string> prop_variables(const Formula& f) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  walk(f, [&](const Formula& g) {
    if (g.kind() == FormulaKind::Variable && seen.insert(g.name()).second) out.push_back(g.name());
  });
  return out;
}

std::vector<std::string> constants_used(const Formula& f) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  walk(f, [&](const Formula& g) {
    if (g.kind() == FormulaKind::Constant && seen.insert(g.name()).second) out.push_back(g.name());
  });
  return out;
}

std::set<std::string> free_object_variables(const Formula& f) {
  std::set<std::string> bound, out;
  free_vars_into(f, bound, out);
  return out;
}

PredicateLanguage language_of(const Formula& f) {
  PredicateLanguage lang;
  walk(f, [&](const Formula& g) {
    if (g.kind() != FormulaKind::Atom) return;
    lang.add_predicate({g.name(), g.terms().size()});
    for (const auto& t : g.terms()) collect_terms_language(t, lang);
  });
  return lang;
}

std::vector<Term> ground_terms(const Formula& f) {
  std::vector<Term> out;
  walk(f, [&](const Formula& g) {
    for (const auto& t : g.terms()) collect_ground(t, out);
  });
  return out;
}

const Formula& subformula_at(const Formula& f, const Path& path) {
  const Formula* cur = &f;
  for (std::size_t step : path) {
    if (step >= cur->children().size()) throw Error(ErrorCode::BadPath, "path leaves the formula");
    cur = &cur->child(step);
  }
  return *cur;
}

Formula replace_at(const Formula& f, const Path& path, const Formula& replacement) {
  std::function<Formula(const Formula&, std::size_t)> go = [&](const Formula& g, std::size_t depth) -> Formula {
    if (depth == path.size()) return replacement;
    if (path[depth] >= g.children().size()) throw Error(ErrorCode::BadPath, "path leaves the formula");
    std::vector<Formula> kids = g.children();
    kids[path[depth]] = go(g.child(path[depth]), depth + 1);
    return rebuild(g, std::move(kids));
  };
  return go(f, 0);
}

Polarity polarity_of(const Formula& f, const Path& path, const PolaritySignature& signature) {
  Polarity pol = Polarity::Positive;
  const Formula* cur = &f;
  for (std::size_t step : path) {
    if (step >= cur->children().size()) throw Error(ErrorCode::BadPath, "path leaves the formula");
    if (cur->kind() == FormulaKind::Connective) pol = pol * connective_polarity(*cur, step, signature);
    cur = &cur->child(step);
  }
  return pol;
}

std::vector<QuantifierOccurrence> classify_quantifiers(const Formula& f, const PolaritySignature& signature) {
  std::vector<QuantifierOccurrence> out;
  Path path;
  classify_into(f, path, Polarity::Positive, signature, out);
  return out;
}

bool has_strong_quantifier(const Formula& f, const PolaritySignature& signature) {
  for (const auto& q : classify_quantifiers(f, signature))
    if (q.strong) return true;
  return false;
}

Term substitute(const Term& t, const std::map<std::string, Term>& mapping) {
  if (t.is_var()) {
    auto it = mapping.find(t.name);
    return it == mapping.end() ? t : it->second;
  }
  Term copy = t;
  for (auto& a : copy.args) a = substitute(a, mapping);
  return copy;
}

Formula substitute(const Formula& f, const std::map<std::string, Term>& mapping) {
  if (mapping.empty()) return f;
  switch (f.kind()) {
    case FormulaKind::Variable:
    case FormulaKind::Constant: return f;
    case FormulaKind::Atom: {
      std::vector<Term> terms;
      for (const auto& t : f.terms()) terms.push_back(substitute(t, mapping));
      return Formula::atom(f.name(), std::move(terms));
    }
    case FormulaKind::Connective: {
      std::vector<Formula> kids;
      for (const auto& c : f.children()) kids.push_back(substitute(c, mapping));
      return Formula::connective(f.name(), std::move(kids));
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists: break;
  }
  std::map<std::string, Term> inner = mapping;
  inner.erase(f.name());
  const std::set<std::string> body_free = free_object_variables(f.body());
  bool captures = false;
  std::set<std::string> avoid = body_free;
  for (const auto& [var, term] : inner) {
    if (!body_free.count(var)) continue;
    term_vars(term, avoid);
    if (term_mentions(term, f.name())) captures = true;
  }
  std::string var = f.name();
  Formula body = f.body();
  if (captures) {
    std::string fresh = var + "'";
    while (avoid.count(fresh) || inner.count(fresh)) fresh += "'";
    body = substitute(body, {{var, Term::var(fresh)}});
    var = fresh;
  }
  body = substitute(body, inner);
  return f.kind() == FormulaKind::Forall ? Formula::forall(var, body) : Formula::exists(var, body);
}

Formula substitute_prop(const Formula& f, const std::map<std::string, Formula>& mapping) {
  if (f.kind() == FormulaKind::Variable) {
    auto it = mapping.find(f.name());
    return it == mapping.end() ? f : it->second;
  }
  if (f.children().empty()) return f;
  std::vector<Formula> kids;
  for (const auto& c : f.children()) kids.push_back(substitute_prop(c, mapping));
  return rebuild(f, std::move(kids));
}

Formula replace_term(const Formula& f, const Term& from, const Term& to) {
  if (f.kind() == FormulaKind::Atom) {
    std::vector<Term> terms;
    for (const auto& t : f.terms()) terms.push_back(replace_in_term(t, from, to));
    return Formula::atom(f.name(), std::move(terms));
  }
  if (f.children().empty()) return f;
  std::vector<Formula> kids;
  for (const auto& c : f.children()) kids.push_back(replace_term(c, from, to));
  return rebuild(f, std::move(kids));
}

}  // namespace fvl
