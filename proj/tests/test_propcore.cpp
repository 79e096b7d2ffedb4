#include <gtest/gtest.h>

#include "fvl/error.hpp"
#include "fvl/propcore.hpp"
#include "oracles.hpp"

using namespace fvl;

namespace {

Formula P(const std::string& s, const Lattice& L) { return parse_formula(s, L.signature()); }

Valuation val(const Lattice& L, std::vector<std::pair<std::string, std::string>> items) {
  Valuation v;
  for (auto& [k, e] : items) {
    v.vars.push_back(k);
    v.values.push_back(*L.find(e));
  }
  return v;
}

std::vector<Elem> elems(const Lattice& L, std::vector<std::string> names) {
  std::vector<Elem> out;
  for (auto& n : names) out.push_back(*L.find(n));
  return out;
}

}  // namespace

TEST(Eval, Examples) {
  const Lattice g = bundled_lattice("goedel3");
  EXPECT_EQ(eval_prop(P("x -> y", g), g, val(g, {{"x", "1"}, {"y", "h"}})), *g.find("h"));
  for (const auto& L : oracle::bundled())
    for (Elem e = 0; e < L.size(); ++e) EXPECT_EQ(eval_prop(Formula::variable("x"), L, {{"x"}, {e}}), e);
  const Lattice t = bundled_lattice("three_a");
  EXPECT_EQ(column_of(P("x & (x -> #0)", t), t, {"x"}), elems(t, {"0", "a", "0"}));
  EXPECT_EQ(oracle::column(P("x & (x -> #0)", t), t, {"x"}), elems(t, {"0", "a", "0"}));
}

TEST(Eval, Errors) {
  const Lattice c = bundled_lattice("classical");
  try {
    eval_prop(P("x -> y", c), c, val(c, {{"x", "1"}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnboundVariable);
  }
  try {
    eval_prop(Formula::constant("0"), c, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UndeclaredConstant);
  }
}

TEST(Eval, AgreesWithOracle) {
  oracle::Gen gen(21);
  for (const auto& L : oracle::bundled()) {
    for (int k = 0; k < 40; ++k) {
      const std::vector<std::string> vars{"x", "y"};
      const Formula f = gen.prop(L, vars, 5);
      EXPECT_EQ(column_of(f, L, vars), oracle::column(f, L, vars)) << render(f);
    }
  }
}

TEST(Validity, Examples) {
  for (const auto& L : oracle::bundled()) EXPECT_TRUE(is_valid_prop(P("x -> x", L), L).valid);
  const Lattice t = bundled_lattice("three_a");
  EXPECT_TRUE(is_valid_prop(P("x & (x -> #0) -> (y | (y -> #0))", t), t).valid);
  const Lattice c = bundled_lattice("classical");
  const auto r = is_valid_prop(P("x -> y", c), c);
  ASSERT_FALSE(r.valid);
  ASSERT_TRUE(r.countervaluation);
  EXPECT_EQ(render_valuation(*r.countervaluation, c), "x=1, y=0");
}

TEST(Validity, VariableCap) {
  const Lattice c = bundled_lattice("classical");
  std::string text = "x0";
  for (int i = 1; i <= 10; ++i) text += " | x" + std::to_string(i);
  try {
    is_valid_prop(P(text, c), c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
  }
  ValidityOptions o;
  o.var_cap = 11;
  EXPECT_FALSE(is_valid_prop(P(text, c), c, o).valid);
}

TEST(Validity, AgreesWithOracle) {
  oracle::Gen gen(22);
  std::size_t valid = 0;
  for (const auto& L : oracle::bundled()) {
    for (int k = 0; k < 80; ++k) {
      const std::vector<std::string> vars{"x", "y", "z"};
      const Formula f = k % 2 ? gen.prop(L, vars, 4) : Formula::implies(gen.prop(L, vars, 3), gen.prop(L, vars, 3));
      const auto r = is_valid_prop(f, L);
      EXPECT_EQ(r.valid, oracle::valid(f, L)) << render(f);
      valid += r.valid;
      if (!r.valid) {
        ASSERT_TRUE(r.countervaluation);
        EXPECT_NE(eval_prop(f, L, *r.countervaluation), L.top());
      }
    }
  }
  EXPECT_GT(valid, 10u);
}

TEST(Closure, ExampleTableConstants) {
  const Lattice L = bundled_lattice("luk3");
  ClosureOptions o;
  o.connectives = std::vector<std::string>{"->"};
  const auto r = representable_closure(L, {}, o);
  EXPECT_TRUE(r.complete);
  EXPECT_EQ(r.trace, (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(constant_values(L), elems(L, {"0", "1"}));
}

TEST(Closure, ExampleTableOneVariable) {
  const Lattice L = bundled_lattice("luk3");
  ClosureOptions o;
  o.connectives = std::vector<std::string>{"->"};
  const auto r = representable_closure(L, {"x"}, o);
  EXPECT_EQ(r.trace, (std::vector<std::size_t>{2, 4, 6, 9, 11, 12}));
  // Exactly the f with f(0), f(1) in {0,1}.
  std::set<std::vector<Elem>> expected;
  const Elem z = *L.find("0"), h = *L.find("h"), one = *L.find("1");
  for (Elem a : {z, one})
    for (Elem b : {z, h, one})
      for (Elem c : {z, one}) expected.insert({a, b, c});
  std::set<std::vector<Elem>> got;
  for (const auto& col : r.columns) got.insert(col.values);
  EXPECT_EQ(got, expected);
  EXPECT_EQ(oracle::naive_closure(L, {"x"}, {"->"}).trace, r.trace);
}

TEST(Closure, ClassicalWithBothConstants) {
  const Lattice L = bundled_lattice("classical01");
  const auto r = representable_closure(L, {"x"});
  EXPECT_EQ(r.columns.size(), 4u);
  // All four unary Boolean functions.
  std::set<std::vector<Elem>> got;
  for (const auto& col : r.columns) got.insert(col.values);
  EXPECT_EQ(got, (std::set<std::vector<Elem>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
}

TEST(Closure, MatchesNaiveFixpoint) {
  for (const auto& L : oracle::bundled()) {
    for (std::size_t n = 0; n <= (L.size() <= 2 ? 2u : 1u); ++n) {
      std::vector<std::string> vars;
      for (std::size_t i = 0; i < n; ++i) vars.push_back("x" + std::to_string(i + 1));
      const auto r = representable_closure(L, vars);
      const auto naive = oracle::naive_closure(L, vars);
      ASSERT_TRUE(r.complete);
      std::set<std::vector<Elem>> got;
      for (const auto& col : r.columns) got.insert(col.values);
      EXPECT_EQ(got, naive.columns) << L.to_text();
      EXPECT_EQ(r.trace, naive.trace);
      for (std::size_t i = 1; i < r.trace.size(); ++i) EXPECT_LT(r.trace[i - 1], r.trace[i]);
      if (!r.trace.empty()) EXPECT_EQ(r.trace.back(), r.columns.size());
    }
  }
}

TEST(Closure, WitnessesReevaluate) {
  for (const auto& L : oracle::bundled()) {
    const std::vector<std::string> vars = L.size() <= 3 ? std::vector<std::string>{"x", "y"} : std::vector<std::string>{"x"};
    const auto r = representable_closure(L, vars);
    for (const auto& col : r.columns) {
      EXPECT_EQ(oracle::column(col.witness, L, vars), col.values) << render(col.witness);
      EXPECT_EQ(col.values.size(), r.columns.front().values.size());
    }
  }
}

TEST(Closure, BudgetMarksIncomplete) {
  const Lattice L = bundled_lattice("mc");
  ClosureOptions o;
  o.max_columns = 10;
  const auto r = representable_closure(L, {"x", "y"}, o);
  EXPECT_FALSE(r.complete);
  EXPECT_FALSE(r.budget_hit.empty());
  ClosureOptions lv;
  lv.max_levels = 1;
  EXPECT_FALSE(representable_closure(L, {"x"}, lv).complete);
}

TEST(Constants, Examples) {
  const Lattice t = bundled_lattice("three_a");
  EXPECT_EQ(constant_values(t), elems(t, {"0", "1"}));
  const Lattice ta = bundled_lattice("three_a_abar");
  EXPECT_EQ(constant_values(ta), elems(ta, {"0", "a", "1"}));
  EXPECT_TRUE(constant_values(bundled_lattice("classical")).empty());
}

TEST(Envelopes, Examples) {
  const Lattice t = bundled_lattice("three_a");
  const auto e = envelopes(P("x & (x -> #0)", t), P("y | (y -> #0)", t), t);
  EXPECT_TRUE(e.shared.empty());
  EXPECT_EQ(e.lower, elems(t, {"a"}));
  EXPECT_EQ(e.upper, elems(t, {"a"}));
  const Lattice c = bundled_lattice("classical");
  const auto e2 = envelopes(P("x & y", c), P("y | z", c), c);
  EXPECT_EQ(e2.shared, std::vector<std::string>{"y"});
  EXPECT_EQ(e2.lower, (std::vector<Elem>{0, 1}));
  EXPECT_EQ(e2.upper, (std::vector<Elem>{0, 1}));
  const Lattice m = bundled_lattice("mc");
  const auto e3 = envelopes(Formula::variable("x"), Formula::variable("x"), m);
  EXPECT_EQ(e3.lower, column_of(Formula::variable("x"), m, {"x"}));
  EXPECT_EQ(e3.upper, e3.lower);
  try {
    envelopes(P("x", c), P("y", c), c);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::NotValid);
  }
}

TEST(Envelopes, SandwichProperty) {
  oracle::Gen gen(23);
  int checked = 0;
  for (const auto& L : oracle::bundled()) {
    for (int k = 0; k < 150 && checked < 400; ++k) {
      const Formula a = gen.prop(L, {"x", "y"}, 3);
      const Formula b = Formula::disj(gen.prop(L, {"y", "z"}, 3), a);
      const Formula bb = substitute_prop(b, {{"x", Formula::variable("y")}});
      if (!oracle::leq_everywhere(a, bb, L)) continue;
      const auto e = envelopes(a, bb, L);
      ++checked;
      std::vector<std::string> all = e.shared;
      all.insert(all.end(), e.left.begin(), e.left.end());
      all.insert(all.end(), e.right.begin(), e.right.end());
      oracle::for_each_tuple(L.size(), all.size(), [&](const std::vector<Elem>& v) {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < e.shared.size(); ++i) idx = idx * L.size() + v[i];
        const auto env = oracle::env_of(all, v);
        EXPECT_TRUE(L.leq(oracle::eval(a, L, env), e.lower[idx]));
        EXPECT_TRUE(L.leq(e.upper[idx], oracle::eval(bb, L, env)));
        EXPECT_TRUE(L.leq(e.lower[idx], e.upper[idx]));
      });
    }
  }
  EXPECT_GT(checked, 50);
}
