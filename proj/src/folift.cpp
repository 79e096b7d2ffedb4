#include "fvl/folift.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "fvl/error.hpp"

namespace fvl {

std::size_t fo_eval_term(const Term& t, const FoStructure& s, const Assignment& v) {
  if (t.is_var()) {
    auto it = v.find(t.name);
    if (it == v.end()) throw Error(ErrorCode::UnboundVariable, "object variable '" + t.name + "' is unassigned");
    return it->second;
  }
  auto it = s.functions.find(t.name);
  if (it == s.functions.end()) throw Error(ErrorCode::UninterpretedSymbol, "function '" + t.name + "' is uninterpreted");
  std::size_t idx = 0;
  for (const auto& a : t.args) idx = idx * s.domain_size + fo_eval_term(a, s, v);
  if (idx >= it->second.size()) throw Error(ErrorCode::UninterpretedSymbol, "function '" + t.name + "' table too short");
  return it->second[idx];
}

Elem fo_eval(const Formula& f, const Lattice& lattice, const FoStructure& s, const Assignment& v) {
  switch (f.kind()) {
    case FormulaKind::Variable:
      throw Error(ErrorCode::UninterpretedSymbol, "propositional variable '" + f.name() + "' in a first-order formula");
    case FormulaKind::Constant: {
      auto value = lattice.constant(f.name());
      if (!value) throw Error(ErrorCode::UndeclaredConstant, "constant #" + f.name() + " is not declared");
      return *value;
    }
    case FormulaKind::Atom: {
      auto it = s.predicates.find(f.name());
      if (it == s.predicates.end())
        throw Error(ErrorCode::UninterpretedSymbol, "predicate '" + f.name() + "' is uninterpreted");
      std::size_t idx = 0;
      for (const auto& t : f.terms()) idx = idx * s.domain_size + fo_eval_term(t, s, v);
      if (idx >= it->second.size())
        throw Error(ErrorCode::UninterpretedSymbol, "predicate '" + f.name() + "' table too short");
      return it->second[idx];
    }
    case FormulaKind::Connective: {
      const ConnectiveTable* ct = lattice.connective(f.name());
      if (!ct) throw Error(ErrorCode::UnknownSymbol, "connective '" + f.name() + "' not in lattice");
      std::vector<Elem> args;
      for (const auto& c : f.children()) args.push_back(fo_eval(c, lattice, s, v));
      return ct->apply(args, lattice.size());
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      const bool all = f.kind() == FormulaKind::Forall;
      Elem acc = all ? lattice.top() : lattice.bottom();
      Assignment inner = v;
      for (std::size_t d = 0; d < s.domain_size; ++d) {
        inner[f.name()] = d;
        const Elem x = fo_eval(f.body(), lattice, s, inner);
        acc = all ? lattice.meet(acc, x) : lattice.join(acc, x);
      }
      return acc;
    }
  }
  return lattice.bottom();
}

namespace {

void collect_names(const Term& t, std::set<std::string>& out) {
  out.insert(t.name);
  for (const auto& a : t.args) collect_names(a, out);
}

void collect_names(const Formula& f, std::set<std::string>& out) {
  out.insert(f.name());
  for (const auto& t : f.terms()) collect_names(t, out);
  for (const auto& c : f.children()) collect_names(c, out);
}

class Skolemizer {
public:
  Skolemizer(const Lattice& lattice, std::set<std::string> used) : lattice_(lattice), used_(std::move(used)) {}

  Formula run(const Formula& f, Polarity pol, Path& path) {
    if (f.kind() == FormulaKind::Connective) {
      std::vector<Formula> kids;
      for (std::size_t i = 0; i < f.children().size(); ++i) {
        const ConnectiveDecl* decl = lattice_.signature().find(f.name());
        if (!decl) throw Error(ErrorCode::UnknownSymbol, "connective '" + f.name() + "' not in lattice");
        path.push_back(i);
        kids.push_back(run(f.child(i), pol * decl->polarity[i], path));
        path.pop_back();
      }
      return Formula::connective(f.name(), std::move(kids));
    }
    if (!f.is_quantifier()) return f;
    const bool strong = (f.kind() == FormulaKind::Forall) == (pol == Polarity::Positive);
    path.push_back(0);
    if (!strong) {
      weak_.push_back(f.name());
      Formula body = run(f.body(), pol, path);
      weak_.pop_back();
      path.pop_back();
      return f.kind() == FormulaKind::Forall ? Formula::forall(f.name(), body) : Formula::exists(f.name(), body);
    }
    SkolemEntry entry{Path(path.begin(), path.end() - 1), f.kind(), f.name(), {}, weak_};
    std::vector<Term> args;
    for (const auto& w : weak_) args.push_back(Term::var(w));
    std::vector<Formula> parts;
    for (std::size_t i = 0; i < lattice_.size(); ++i) {
      const std::string name = fresh(args.empty());
      entry.functions.push_back(name);
      Formula instance = substitute(f.body(), {{f.name(), Term::app(name, args)}});
      parts.push_back(run(instance, pol, path));
    }
    path.pop_back();
    record_.push_back(std::move(entry));
    return f.kind() == FormulaKind::Exists ? Formula::big_or(parts) : Formula::big_and(parts);
  }

  std::vector<SkolemEntry> take_record() { return std::move(record_); }

private:
  std::string fresh(bool constant) {
    std::size_t& counter = constant ? next_constant_ : next_function_;
    while (true) {
      std::string name = (constant ? "c" : "f") + std::to_string(counter++);
      if (used_.insert(name).second) return name;
    }
  }

  const Lattice& lattice_;
  std::set<std::string> used_;
  std::vector<std::string> weak_;
  std::vector<SkolemEntry> record_;
  std::size_t next_constant_ = 1;
  std::size_t next_function_ = 1;
};

}  // namespace

SkolemResult skolemize(const Formula& f, const Lattice& lattice, const std::set<std::string>& avoid) {
  std::set<std::string> used = avoid;
  collect_names(f, used);
  Skolemizer sk(lattice, std::move(used));
  Path path;
  Formula out = sk.run(f, Polarity::Positive, path);
  return {out, sk.take_record()};
}

PredicateLanguage with_default_constant(const PredicateLanguage& language) {
  if (language.has_object_constant()) return language;
  PredicateLanguage out = language;
  std::string name = "c0";
  while (out.function(name) || out.predicate(name)) name += "'";
  out.add_function({name, 0});
  return out;
}

TermEnumeration enumerate_closed_terms(const PredicateLanguage& language, std::size_t k) {
  const PredicateLanguage lang = with_default_constant(language);
  TermEnumeration out;
  bool has_functions = false;
  for (const auto& f : lang.functions()) has_functions = has_functions || f.arity > 0;
  std::vector<std::vector<std::size_t>> by_size(2);
  for (std::size_t size = 1; out.terms.size() < k; ++size) {
    if (by_size.size() <= size) by_size.resize(size + 1);
    for (const auto& f : lang.functions()) {
      if (out.terms.size() >= k) break;
      if (f.arity == 0) {
        if (size == 1) {
          by_size[1].push_back(out.terms.size());
          out.terms.push_back(Term::app(f.name));
        }
        continue;
      }
      if (size < f.arity + 1) continue;
      // Argument tuples whose sizes sum to size - 1, ordered by term index.
      std::vector<std::vector<std::size_t>> tuples;
      std::vector<std::size_t> current;
      std::function<void(std::size_t, std::size_t)> pick = [&](std::size_t pos, std::size_t remaining) {
        if (pos == f.arity) {
          if (remaining == 0) tuples.push_back(current);
          return;
        }
        const std::size_t left = f.arity - pos - 1;
        for (std::size_t s = 1; s + left <= remaining && s < size; ++s) {
          for (std::size_t idx : by_size[s]) {
            current.push_back(idx);
            pick(pos + 1, remaining - s);
            current.pop_back();
          }
        }
      };
      pick(0, size - 1);
      std::sort(tuples.begin(), tuples.end());
      for (const auto& t : tuples) {
        if (out.terms.size() >= k) break;
        std::vector<Term> args;
        for (auto i : t) args.push_back(out.terms[i]);
        by_size[size].push_back(out.terms.size());
        out.terms.push_back(Term::app(f.name, std::move(args)));
      }
    }
    if (!has_functions) {
      out.exhausted = out.terms.size() < k;
      break;
    }
  }
  return out;
}

Formula expand_n(const Formula& E, std::size_t n, const PolaritySignature& signature, const InstanceSets& instances) {
  if (has_strong_quantifier(E, signature))
    throw Error(ErrorCode::StrongQuantifierPresent, "expansion needs a formula with weak quantifiers only");
  const auto terms = enumerate_closed_terms(language_of(E), n).terms;
  std::function<Formula(const Formula&, Path&)> go = [&](const Formula& f, Path& path) -> Formula {
    if (f.kind() == FormulaKind::Connective) {
      std::vector<Formula> kids;
      for (std::size_t i = 0; i < f.children().size(); ++i) {
        path.push_back(i);
        kids.push_back(go(f.child(i), path));
        path.pop_back();
      }
      return Formula::connective(f.name(), std::move(kids));
    }
    if (!f.is_quantifier()) return f;
    path.push_back(0);
    Formula body = go(f.body(), path);
    path.pop_back();
    std::vector<std::size_t> use;
    if (auto it = instances.find(path); it != instances.end()) {
      for (auto i : it->second)
        if (i < terms.size()) use.push_back(i);
    } else {
      for (std::size_t i = 0; i < terms.size(); ++i) use.push_back(i);
    }
    if (use.empty()) throw Error(ErrorCode::PreconditionFailed, "empty instance set");
    std::vector<Formula> parts;
    for (auto i : use) parts.push_back(substitute(body, {{f.name(), terms[i]}}));
    return f.kind() == FormulaKind::Exists ? Formula::big_or(parts) : Formula::big_and(parts);
  };
  Path path;
  return go(E, path);
}

Abstraction abstract_atoms(const Formula& f) { return abstract_atoms(f, {}); }

Abstraction abstract_atoms(const Formula& f, std::vector<std::pair<std::string, Formula>> dictionary) {
  std::function<Formula(const Formula&)> go = [&](const Formula& g) -> Formula {
    if (g.kind() == FormulaKind::Variable)
      throw Error(ErrorCode::PreconditionFailed, "propositional variable '" + g.name() + "' in a ground formula");
    if (g.kind() == FormulaKind::Atom) {
      for (const auto& t : g.terms())
        if (!t.is_ground()) throw Error(ErrorCode::PreconditionFailed, "atom " + render(g) + " is not ground");
      for (const auto& [p, atom] : dictionary)
        if (atom == g) return Formula::variable(p);
      dictionary.emplace_back("p" + std::to_string(dictionary.size() + 1), g);
      return Formula::variable(dictionary.back().first);
    }
    if (g.is_quantifier()) throw Error(ErrorCode::PreconditionFailed, "quantifier in a ground formula");
    if (g.kind() != FormulaKind::Connective) return g;
    std::vector<Formula> kids;
    for (const auto& c : g.children()) kids.push_back(go(c));
    return Formula::connective(g.name(), std::move(kids));
  };
  Formula out = go(f);
  return {out, std::move(dictionary)};
}

Formula concretize(const Formula& f, const std::vector<std::pair<std::string, Formula>>& dictionary) {
  std::map<std::string, Formula> mapping;
  for (const auto& [p, atom] : dictionary) mapping.emplace(p, atom);
  return substitute_prop(f, mapping);
}

ExpansionCheck check_valid_expansion(const Formula& En, const Lattice& lattice, std::size_t var_cap) {
  ExpansionCheck check;
  check.abstraction = abstract_atoms(En);
  ValidityOptions vo;
  vo.var_cap = var_cap;
  auto result = is_valid_prop(check.abstraction.formula, lattice, vo);
  check.valid = result.valid;
  check.countervaluation = result.countervaluation;
  return check;
}

HerbrandResult find_herbrand_expansion(const Formula& E, const Lattice& lattice, std::size_t max_n,
                                       std::size_t var_cap) {
  HerbrandResult result;
  result.expansion = E;
  result.pruned = E;
  const auto& sig = lattice.signature();
  const auto available = enumerate_closed_terms(language_of(E), max_n);
  result.terms_exhausted = available.exhausted;
  const std::size_t top_n = std::min(max_n, available.terms.size());
  for (std::size_t n = 1; n <= top_n; ++n) {
    result.tried.push_back(n);
    Formula En = expand_n(E, n, sig);
    if (!check_valid_expansion(En, lattice, var_cap).valid) continue;
    result.found = true;
    result.n = n;
    result.expansion = En;
    // Drop instances, last first, while the expansion stays valid.
    InstanceSets sets;
    for (const auto& q : classify_quantifiers(E, sig)) {
      std::vector<std::size_t> all(n);
      for (std::size_t i = 0; i < n; ++i) all[i] = i;
      sets[q.path] = all;
    }
    for (const auto& q : classify_quantifiers(E, sig)) {
      for (std::size_t i = n; i-- > 0;) {
        auto& set = sets[q.path];
        if (set.size() <= 1) break;
        auto trial = sets;
        auto& ts = trial[q.path];
        ts.erase(std::remove(ts.begin(), ts.end(), i), ts.end());
        if (check_valid_expansion(expand_n(E, n, sig, trial), lattice, var_cap).valid) sets = std::move(trial);
      }
    }
    result.pruned = expand_n(E, n, sig, sets);
    return result;
  }
  return result;
}

namespace {

void collect_subterms(const Term& t, std::vector<Term>& out) {
  out.push_back(t);
  for (const auto& a : t.args) collect_subterms(a, out);
}

bool proper_subterm(const Term& inner, const Term& outer) {
  for (const auto& a : outer.args)
    if (a == inner || proper_subterm(inner, a)) return true;
  return false;
}

std::set<std::string> function_symbols(const Formula& f) {
  std::set<std::string> out;
  const auto lang = language_of(f);
  for (const auto& d : lang.functions()) out.insert(d.name);
  return out;
}

}  // namespace

GeneralizeResult generalize_interpolant(const Formula& ground, const Formula& skA, const Formula& skB,
                                        const std::optional<std::set<std::string>>& common) {
  const auto in_a = function_symbols(skA);
  const auto in_b = function_symbols(skB);
  std::set<std::string> shared;
  if (common) shared = *common;
  else
    std::set_intersection(in_a.begin(), in_a.end(), in_b.begin(), in_b.end(), std::inserter(shared, shared.begin()));
  std::set<std::string> taken;
  collect_names(ground, taken);

  GeneralizeResult result;
  Formula matrix = ground;
  std::vector<std::pair<FormulaKind, std::string>> prefix;
  std::size_t counter = 1;
  while (true) {
    std::vector<Term> candidates;
    std::function<void(const Formula&)> scan = [&](const Formula& f) {
      for (const auto& t : f.terms()) {
        std::vector<Term> subs;
        collect_subterms(t, subs);
        for (auto& s : subs)
          if (!s.is_var() && !shared.count(s.name)) candidates.push_back(std::move(s));
      }
      for (const auto& c : f.children()) scan(c);
    };
    scan(matrix);
    if (candidates.empty()) break;
    const Term* chosen = nullptr;
    for (const auto& c : candidates) {
      bool maximal = true;
      for (const auto& o : candidates)
        if (proper_subterm(c, o)) {
          maximal = false;
          break;
        }
      if (maximal) {
        chosen = &c;
        break;
      }
    }
    const Term term = *chosen;
    const bool a_has = in_a.count(term.name) > 0;
    const bool b_has = in_b.count(term.name) > 0;
    if (a_has && b_has)
      throw Error(ErrorCode::SymbolInBoth, "symbol '" + term.name + "' is outside the common language but occurs on both sides");
    const FormulaKind kind = a_has ? FormulaKind::Exists : FormulaKind::Forall;
    std::string var;
    do {
      var = "z" + std::to_string(counter++);
    } while (taken.count(var));
    taken.insert(var);
    matrix = replace_term(matrix, term, Term::var(var));
    std::size_t at = 0;
    if (!prefix.empty() && prefix.front().first == kind)
      while (at < prefix.size() && prefix[at].first == kind) ++at;
    prefix.insert(prefix.begin() + static_cast<std::ptrdiff_t>(at), {kind, var});
    result.steps.push_back({term, var, kind});
  }
  Formula out = matrix;
  for (std::size_t i = prefix.size(); i-- > 0;)
    out = prefix[i].first == FormulaKind::Forall ? Formula::forall(prefix[i].second, out)
                                                 : Formula::exists(prefix[i].second, out);
  result.interpolant = out;
  return result;
}

SmokeReport smoke_test(const Formula& A, const Formula& I, const Formula& B, const Lattice& lattice,
                       const SmokeOptions& options) {
  SmokeReport report;
  const PredicateLanguage lang = language_of(Formula::implies(A, B)).merged(language_of(I));
  const std::size_t m = lattice.size();
  std::mt19937_64 rng(options.seed);
  for (std::size_t d = 1; d <= options.max_domain; ++d) {
    // One mixed-radix digit per table cell.
    std::vector<std::size_t> radix;
    struct Slot {
      bool predicate;
      std::string name;
      std::size_t cells;
    };
    std::vector<Slot> slots;
    long double total = 1;
    for (const auto& p : lang.predicates()) {
      std::size_t cells = 1;
      for (std::size_t i = 0; i < p.arity; ++i) cells *= d;
      slots.push_back({true, p.name, cells});
      for (std::size_t c = 0; c < cells; ++c) {
        radix.push_back(m);
        total *= m;
      }
    }
    for (const auto& f : lang.functions()) {
      std::size_t cells = 1;
      for (std::size_t i = 0; i < f.arity; ++i) cells *= d;
      slots.push_back({false, f.name, cells});
      for (std::size_t c = 0; c < cells; ++c) {
        radix.push_back(d);
        total *= d;
      }
    }
    const bool sample = total > static_cast<long double>(options.max_structures);
    report.sampled = report.sampled || sample;
    const std::uint64_t count = sample ? options.max_structures : static_cast<std::uint64_t>(total);
    std::vector<std::size_t> digits(radix.size(), 0);
    for (std::uint64_t k = 0; k < count; ++k) {
      if (sample)
        for (std::size_t i = 0; i < digits.size(); ++i) digits[i] = std::uniform_int_distribution<std::size_t>(0, radix[i] - 1)(rng);
      FoStructure s;
      s.domain_size = d;
      std::size_t at = 0;
      for (const auto& slot : slots) {
        if (slot.predicate) {
          auto& table = s.predicates[slot.name];
          for (std::size_t c = 0; c < slot.cells; ++c) table.push_back(static_cast<Elem>(digits[at++]));
        } else {
          auto& table = s.functions[slot.name];
          for (std::size_t c = 0; c < slot.cells; ++c) table.push_back(digits[at++]);
        }
      }
      const Elem a = fo_eval(A, lattice, s);
      const Elem i = fo_eval(I, lattice, s);
      const Elem b = fo_eval(B, lattice, s);
      ++report.structures;
      if (!lattice.leq(a, i) || !lattice.leq(i, b)) {
        report.passed = false;
        report.failure = "domain " + std::to_string(d) + ", structure " + std::to_string(k) + ": A=" +
                         lattice.name(a) + " I=" + lattice.name(i) + " B=" + lattice.name(b);
        return report;
      }
      if (!sample) {
        for (std::size_t i2 = digits.size(); i2-- > 0;) {
          if (++digits[i2] < radix[i2]) break;
          digits[i2] = 0;
        }
      }
    }
  }
  return report;
}

FoInterpolation fo_interpolate(const Formula& implication, const Lattice& lattice, const FoOptions& options) {
  if (!implication.is_connective(kImplies))
    throw Error(ErrorCode::PreconditionFailed, "expected an implication A -> B");
  FoInterpolation r;
  r.A = implication.child(0);
  r.B = implication.child(1);
  r.skolem = skolemize(implication, lattice);
  r.skA = r.skolem.formula.child(0);
  r.skB = r.skolem.formula.child(1);
  r.herbrand = find_herbrand_expansion(r.skolem.formula, lattice, options.max_n, options.var_cap);
  if (!r.herbrand.found)
    throw Error(ErrorCode::UnknownValidity, "no Herbrand expansion up to n = " + std::to_string(options.max_n));
  r.abstraction = abstract_atoms(r.herbrand.pruned);
  r.prop_a = r.abstraction.formula.child(0);
  r.prop_b = r.abstraction.formula.child(1);
  r.prop = find_prop_interpolant(r.prop_a, r.prop_b, lattice, options.prop);
  if (r.prop.status != Verdict::Yes)
    throw Error(ErrorCode::PropInterpolationFailed,
                std::string("propositional interpolation answered ") + std::string(to_string(r.prop.status)),
                {render(r.prop_a), render(r.prop_b)});
  r.ground_interpolant = concretize(*r.prop.interpolant, r.abstraction.dictionary);
  r.generalized = generalize_interpolant(r.ground_interpolant, r.skA, r.skB);
  r.notes = {
      "skolemization: the skolemized implication is valid whenever the input is",
      "expansion: the pruned expansion is a valid instance of the skolemized implication",
      "lemma alpha: skA <= ground interpolant <= skB follows from the expansion contexts by monotonicity",
      "skolem axioms: Skolem symbols are removed by generalization; no axiom rewriting is performed",
  };

  const Formula& I = r.generalized.interpolant;
  const auto lang_a = language_of(r.A), lang_b = language_of(r.B), lang_i = language_of(I);
  for (const auto& p : lang_i.predicates())
    if (!lang_a.predicate(p.name) || !lang_b.predicate(p.name))
      throw Error(ErrorCode::SmokeTestFailed, "interpolant mentions non-common predicate " + p.name);
  for (const auto& entry : r.skolem.record)
    for (const auto& f : entry.functions)
      if (lang_i.function(f)) throw Error(ErrorCode::SmokeTestFailed, "interpolant mentions Skolem symbol " + f);
  r.smoke = smoke_test(r.A, I, r.B, lattice, options.smoke);
  if (!r.smoke.passed) throw Error(ErrorCode::SmokeTestFailed, r.smoke.failure);
  return r;
}

bool alpha_equivalent(const Formula& a, const Formula& b) {
  std::function<bool(const Term&, const Term&, const std::map<std::string, std::string>&,
                     const std::map<std::string, std::string>&)>
      term_eq = [&](const Term& s, const Term& t, const auto& ab, const auto& ba) -> bool {
    if (s.kind != t.kind) return false;
    if (s.is_var()) {
      auto i = ab.find(s.name);
      auto j = ba.find(t.name);
      if (i == ab.end() || j == ba.end()) return i == ab.end() && j == ba.end() && s.name == t.name;
      return i->second == t.name && j->second == s.name;
    }
    if (s.name != t.name || s.args.size() != t.args.size()) return false;
    for (std::size_t k = 0; k < s.args.size(); ++k)
      if (!term_eq(s.args[k], t.args[k], ab, ba)) return false;
    return true;
  };
  std::function<bool(const Formula&, const Formula&, std::map<std::string, std::string>,
                     std::map<std::string, std::string>)>
      eq = [&](const Formula& x, const Formula& y, auto ab, auto ba) -> bool {
    if (x.kind() != y.kind()) return false;
    if (x.is_quantifier()) {
      ab[x.name()] = y.name();
      ba[y.name()] = x.name();
      return eq(x.body(), y.body(), ab, ba);
    }
    if (x.name() != y.name() || x.terms().size() != y.terms().size() || x.children().size() != y.children().size())
      return false;
    for (std::size_t k = 0; k < x.terms().size(); ++k)
      if (!term_eq(x.terms()[k], y.terms()[k], ab, ba)) return false;
    for (std::size_t k = 0; k < x.children().size(); ++k)
      if (!eq(x.child(k), y.child(k), ab, ba)) return false;
    return true;
  };
  return eq(a, b, {}, {});
}

}  // namespace fvl
