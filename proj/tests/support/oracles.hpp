#pragma once

// Brute-force reference implementations used as test oracles. Deliberately
// naive: direct table indexing, full valuation sweeps, no pruning.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fvl/algebra.hpp"
#include "fvl/formula.hpp"
#include "fvl/lattice_text.hpp"
#include "fvl/syntax.hpp"

namespace oracle {

using fvl::Elem;
using fvl::Formula;
using fvl::FormulaKind;
using fvl::Lattice;

using Env = std::map<std::string, Elem>;

inline Elem table_at(const Lattice& L, const std::string& name, const std::vector<Elem>& args) {
  const fvl::ConnectiveTable* t = L.connective(name);
  std::size_t idx = 0;
  for (Elem a : args) idx = idx * L.size() + a;
  return t->table.at(idx);
}

inline Elem eval(const Formula& f, const Lattice& L, const Env& env) {
  switch (f.kind()) {
    case FormulaKind::Variable:
      return env.at(f.name());
    case FormulaKind::Constant:
      return *L.constant(f.name());
    case FormulaKind::Connective: {
      std::vector<Elem> args;
      for (const auto& c : f.children()) args.push_back(eval(c, L, env));
      return table_at(L, f.name(), args);
    }
    default:
      throw std::logic_error("oracle::eval is propositional only");
  }
}

// Calls fn(values) for every tuple in {0..m-1}^n, last position fastest.
template <class Fn>
void for_each_tuple(std::size_t m, std::size_t n, Fn fn) {
  std::vector<Elem> v(n, 0);
  while (true) {
    fn(v);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++v[i] < m) break;
      v[i] = 0;
      if (i == 0) return;
    }
    if (n == 0) return;
  }
}

inline std::vector<std::string> vars_of(std::initializer_list<Formula> fs) {
  std::vector<std::string> out;
  for (const auto& f : fs)
    for (const auto& v : fvl::prop_variables(f))
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  return out;
}

inline Env env_of(const std::vector<std::string>& vars, const std::vector<Elem>& vals) {
  Env e;
  for (std::size_t i = 0; i < vars.size(); ++i) e[vars[i]] = vals[i];
  return e;
}

inline bool valid(const Formula& f, const Lattice& L) {
  const auto vars = vars_of({f});
  bool ok = true;
  for_each_tuple(L.size(), vars.size(), [&](const std::vector<Elem>& v) {
    if (ok && eval(f, L, env_of(vars, v)) != L.top()) ok = false;
  });
  return ok;
}

// a <= b under every valuation of the union of their variables.
inline bool leq_everywhere(const Formula& a, const Formula& b, const Lattice& L) {
  const auto vars = vars_of({a, b});
  bool ok = true;
  for_each_tuple(L.size(), vars.size(), [&](const std::vector<Elem>& v) {
    if (!ok) return;
    const Env e = env_of(vars, v);
    if (!L.leq(eval(a, L, e), eval(b, L, e))) ok = false;
  });
  return ok;
}

inline bool sandwich(const Formula& a, const Formula& i, const Formula& b, const Lattice& L) {
  return leq_everywhere(a, i, L) && leq_everywhere(i, b, L);
}

inline std::vector<Elem> column(const Formula& f, const Lattice& L, const std::vector<std::string>& vars) {
  std::vector<Elem> out;
  for_each_tuple(L.size(), vars.size(), [&](const std::vector<Elem>& v) { out.push_back(eval(f, L, env_of(vars, v))); });
  return out;
}

struct NaiveClosure {
  std::set<std::vector<Elem>> columns;
  std::vector<std::size_t> trace;  // cumulative size after each level that added something
};

// Level k+1 = level k plus every connective applied to every tuple of level-k
// columns. No semi-naive shortcut.
inline NaiveClosure naive_closure(const Lattice& L, const std::vector<std::string>& vars,
                                  const std::vector<std::string>& connectives = {}) {
  const std::size_t rows = [&] {
    std::size_t r = 1;
    for (std::size_t i = 0; i < vars.size(); ++i) r *= L.size();
    return r;
  }();
  NaiveClosure out;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    std::vector<Elem> col;
    for_each_tuple(L.size(), vars.size(), [&](const std::vector<Elem>& v) { col.push_back(v[i]); });
    out.columns.insert(col);
  }
  for (const auto& k : L.constants()) out.columns.insert(std::vector<Elem>(rows, k.value));
  if (!out.columns.empty()) out.trace.push_back(out.columns.size());
  std::vector<const fvl::ConnectiveTable*> use;
  for (const auto& decl : L.signature().connectives())
    if (connectives.empty() || std::find(connectives.begin(), connectives.end(), decl.name) != connectives.end())
      use.push_back(L.connective(decl.name));
  while (true) {
    std::vector<std::vector<Elem>> cur(out.columns.begin(), out.columns.end());
    std::set<std::vector<Elem>> next = out.columns;
    for (const auto* t : use) {
      const std::size_t arity = t->decl.polarity.size();
      if (arity > 0 && cur.empty()) continue;
      for_each_tuple(cur.size(), arity, [&](const std::vector<Elem>& pick) {
        std::vector<Elem> col(rows);
        for (std::size_t r = 0; r < rows; ++r) {
          std::size_t idx = 0;
          for (std::size_t j = 0; j < arity; ++j) idx = idx * L.size() + cur[pick[j]][r];
          col[r] = t->table[idx];
        }
        next.insert(col);
      });
    }
    if (next.size() == out.columns.size()) break;
    out.columns = std::move(next);
    out.trace.push_back(out.columns.size());
  }
  return out;
}

struct Gen {
  explicit Gen(std::uint64_t seed) : rng(seed) {}
  std::mt19937_64 rng;

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

  // Random propositional word. `connectives` empty means every connective
  // of the lattice.
  Formula prop(const Lattice& L, const std::vector<std::string>& vars, int depth, bool constants = true,
               std::vector<std::string> connectives = {}) {
    if (connectives.empty())
      for (const auto& d : L.signature().connectives()) connectives.push_back(d.name);
    const bool have_constants = constants && !L.constants().empty();
    if (depth <= 0 || coin(0.25)) {
      if (vars.empty() || (have_constants && coin(0.2)))
        return have_constants ? Formula::constant(L.constants()[below(L.constants().size())].name)
                              : Formula::variable(vars.empty() ? "x" : vars[0]);
      return Formula::variable(vars[below(vars.size())]);
    }
    const std::string& c = connectives[below(connectives.size())];
    const auto* decl = L.signature().find(c);
    std::vector<Formula> kids;
    for (std::size_t i = 0; i < decl->polarity.size(); ++i) kids.push_back(prop(L, vars, depth - 1, constants, connectives));
    if (kids.empty() && vars.empty() && !have_constants) return Formula::variable("x");
    return Formula::connective(c, std::move(kids));
  }

  fvl::Term term(const std::vector<std::string>& bound, const std::vector<std::string>& constants, int depth,
                 const std::vector<std::string>& unary) {
    if (depth > 0 && !unary.empty() && coin(0.2))
      return fvl::Term::app(unary[below(unary.size())], {term(bound, constants, depth - 1, unary)});
    if (!bound.empty() && (constants.empty() || coin(0.7))) return fvl::Term::var(bound[below(bound.size())]);
    return fvl::Term::app(constants[below(constants.size())]);
  }

  // Random first-order sentence over unary predicates and object constants.
  Formula fo(const Lattice& L, const std::vector<std::string>& predicates, const std::vector<std::string>& constants,
             int depth, std::vector<std::string> bound = {}, const std::vector<std::string>& unary = {}) {
    if (depth <= 0 || coin(0.2)) {
      if (bound.empty() && constants.empty()) {
        const std::string v = "v" + std::to_string(bound.size());
        return Formula::exists(v, Formula::atom(predicates[below(predicates.size())], {fvl::Term::var(v)}));
      }
      return Formula::atom(predicates[below(predicates.size())], {term(bound, constants, 1, unary)});
    }
    if (coin(0.35)) {
      const std::string v = "v" + std::to_string(bound.size());
      bound.push_back(v);
      Formula body = fo(L, predicates, constants, depth - 1, bound, unary);
      return coin() ? Formula::forall(v, body) : Formula::exists(v, body);
    }
    static const char* binary[] = {"|", "&", "->"};
    const std::string c = binary[below(3)];
    return Formula::connective(c, {fo(L, predicates, constants, depth - 1, bound, unary),
                                   fo(L, predicates, constants, depth - 1, bound, unary)});
  }
};

inline std::vector<Lattice> bundled() {
  std::vector<Lattice> out;
  for (const auto& n : fvl::bundled_lattice_names()) out.push_back(fvl::bundled_lattice(n));
  return out;
}

}  // namespace oracle
