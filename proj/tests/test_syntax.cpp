#include <gtest/gtest.h>

#include "fvl/error.hpp"
#include "fvl/folift.hpp"
#include "fvl/syntax.hpp"
#include "oracles.hpp"

using namespace fvl;

namespace {

const PolaritySignature& sig() { return basic_signature(); }

Formula P(const std::string& s) { return parse_formula(s, sig()); }

ErrorCode parse_code(const std::string& s, const PolaritySignature& signature = basic_signature()) {
  try {
    parse_formula(s, signature);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "parsed: " << s;
  return ErrorCode::Usage;
}

void collect_paths(const Formula& f, Path& cur, std::vector<Path>& out) {
  out.push_back(cur);
  for (std::size_t i = 0; i < f.children().size(); ++i) {
    cur.push_back(i);
    collect_paths(f.child(i), cur, out);
    cur.pop_back();
  }
}

}  // namespace

TEST(Parse, WitnessFormula) {
  const Formula f = P("x & (x -> #0) -> (y | (y -> #0))");
  ASSERT_TRUE(f.is_connective(kImplies));
  EXPECT_EQ(f.child(0), Formula::conj(Formula::variable("x"), Formula::implies(Formula::variable("x"), Formula::constant("0"))));
  EXPECT_EQ(f.child(1), Formula::disj(Formula::variable("y"), Formula::implies(Formula::variable("y"), Formula::constant("0"))));
}

TEST(Parse, NestedQuantifiers) {
  const Formula f = P("exists x. B(x) -> exists y. forall z. C(y,z)");
  ASSERT_TRUE(f.is_connective(kImplies));
  EXPECT_EQ(f.child(0).kind(), FormulaKind::Exists);
  const Formula& r = f.child(1);
  ASSERT_EQ(r.kind(), FormulaKind::Exists);
  ASSERT_EQ(r.body().kind(), FormulaKind::Forall);
  EXPECT_EQ(r.body().body(), Formula::atom("C", {Term::var("y"), Term::var("z")}));
}

TEST(Parse, BareVariableAndPrecedence) {
  EXPECT_EQ(P("x"), Formula::variable("x"));
  EXPECT_EQ(P("a -> b -> c"), Formula::implies(Formula::variable("a"), Formula::implies(Formula::variable("b"), Formula::variable("c"))));
  EXPECT_EQ(P("a | b & c"), Formula::disj(Formula::variable("a"), Formula::conj(Formula::variable("b"), Formula::variable("c"))));
  EXPECT_EQ(P("a | b | c"), Formula::disj(Formula::disj(Formula::variable("a"), Formula::variable("b")), Formula::variable("c")));
  EXPECT_EQ(P("  ( x )  "), Formula::variable("x"));
}

TEST(Parse, NamedConnectives) {
  const Lattice L = bundled_lattice("goedel3_box");
  const Formula f = parse_formula("Box_up(x) -> Box_down(x | #0)", L.signature());
  EXPECT_EQ(f.child(0), Formula::connective("Box_up", {Formula::variable("x")}));
  EXPECT_EQ(render(f), "Box_up(x) -> Box_down(x | #0)");
}

TEST(Parse, Errors) {
  EXPECT_EQ(parse_code("x &"), ErrorCode::ParseError);
  EXPECT_EQ(parse_code("(x"), ErrorCode::ParseError);
  EXPECT_EQ(parse_code("x y"), ErrorCode::ParseError);
  EXPECT_EQ(parse_code("neg(x)"), ErrorCode::UnknownSymbol);
  EXPECT_EQ(parse_code("P(c) -> P(c,d)"), ErrorCode::ArityMismatch);
  EXPECT_EQ(parse_code("forall x. P(x) & x"), ErrorCode::ParseError);
}

TEST(Parse, DeclaredLanguageIsEnforced) {
  PredicateLanguage lang;
  lang.add_predicate({"P", 1});
  lang.add_function({"c", 0});
  ParseOptions o;
  o.language = &lang;
  EXPECT_NO_THROW(parse_formula("P(c)", sig(), o));
  EXPECT_THROW(parse_formula("Q(c)", sig(), o), Error);
  EXPECT_THROW(parse_formula("P(c,c)", sig(), o), Error);
}

TEST(Render, RoundTripRandomPropositional) {
  oracle::Gen gen(11);
  for (const auto& L : oracle::bundled()) {
    for (int k = 0; k < 200; ++k) {
      const Formula f = gen.prop(L, {"x", "y", "z"}, 5);
      const std::string text = render(f);
      EXPECT_EQ(parse_formula(text, L.signature()), f) << text;
    }
  }
}

TEST(Render, RoundTripRandomFirstOrder) {
  oracle::Gen gen(12);
  const Lattice L = bundled_lattice("mc");
  for (int k = 0; k < 500; ++k) {
    const Formula f = gen.fo(L, {"A", "B"}, {"c", "d"}, 5, {}, {"f"});
    const std::string text = render(f);
    EXPECT_EQ(parse_formula(text, L.signature()), f) << text;
  }
}

TEST(Render, WhitespaceInsensitive) {
  const Formula f = P("forall x.(P(x) -> exists y. Q(x,y))");
  EXPECT_EQ(P("forall   x . ( P( x )->exists y.Q(x , y) )"), f);
}

TEST(Polarity, Examples) {
  const Formula f = P("(a -> b) -> c");
  EXPECT_EQ(polarity_of(f, {}, sig()), Polarity::Positive);
  EXPECT_EQ(polarity_of(f, {0}, sig()), Polarity::Negative);
  EXPECT_EQ(polarity_of(f, {0, 0}, sig()), Polarity::Positive);
  EXPECT_EQ(polarity_of(f, {0, 1}, sig()), Polarity::Negative);
  EXPECT_EQ(polarity_of(f, {1}, sig()), Polarity::Positive);
  EXPECT_EQ(polarity_of(P("forall x. (P(x) -> Q(x))"), {0, 0}, sig()), Polarity::Negative);
  try {
    polarity_of(f, {0, 0, 0}, sig());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadPath);
  }
  EXPECT_THROW(polarity_of(f, {2}, sig()), Error);
}

// Replacing the subformula at p by something pointwise larger moves the whole
// formula in the direction of p's polarity.
TEST(Polarity, ReplacementMonotonicity) {
  oracle::Gen gen(13);
  for (const auto& L : oracle::bundled()) {
    if (L.size() > 5) continue;
    for (int k = 0; k < 60; ++k) {
      const std::vector<std::string> vars{"x", "y", "z"};
      const Formula f = gen.prop(L, vars, 4);
      std::vector<Path> paths;
      Path cur;
      collect_paths(f, cur, paths);
      const Path p = paths[gen.below(paths.size())];
      const Formula bigger = Formula::disj(subformula_at(f, p), gen.prop(L, vars, 2));
      const Formula g = replace_at(f, p, bigger);
      const Polarity pol = polarity_of(f, p, L.signature());
      oracle::for_each_tuple(L.size(), vars.size(), [&](const std::vector<Elem>& v) {
        const auto env = oracle::env_of(vars, v);
        const Elem before = oracle::eval(f, L, env), after = oracle::eval(g, L, env);
        if (pol == Polarity::Positive) EXPECT_TRUE(L.leq(before, after)) << render(f) << " at " << render(g);
        else EXPECT_TRUE(L.leq(after, before)) << render(f) << " at " << render(g);
      });
    }
  }
}

TEST(Quantifiers, Classification) {
  const Formula f = P("exists x. B(x) -> exists y. forall z. C(y,z)");
  const auto qs = classify_quantifiers(f, sig());
  ASSERT_EQ(qs.size(), 3u);
  EXPECT_EQ(qs[0].path, Path({0}));
  EXPECT_TRUE(qs[0].strong);
  EXPECT_EQ(qs[0].polarity, Polarity::Negative);
  EXPECT_EQ(qs[1].path, Path({1}));
  EXPECT_FALSE(qs[1].strong);
  EXPECT_EQ(qs[2].path, Path({1, 0}));
  EXPECT_TRUE(qs[2].strong);
  EXPECT_EQ(qs[2].quantifier, FormulaKind::Forall);
}

TEST(Quantifiers, WeakOnlyFormulasAreLeftAlone) {
  oracle::Gen gen(14);
  const Lattice L = bundled_lattice("mc");
  int seen = 0;
  for (int k = 0; k < 400; ++k) {
    const Formula f = gen.fo(L, {"A", "B"}, {"c"}, 4);
    if (has_strong_quantifier(f, L.signature())) continue;
    ++seen;
    for (const auto& q : classify_quantifiers(f, L.signature())) EXPECT_FALSE(q.strong);
    const auto sk = skolemize(f, L);
    EXPECT_EQ(sk.formula, f);
    EXPECT_TRUE(sk.record.empty());
  }
  EXPECT_GT(seen, 20);
}

TEST(Substitute, Examples) {
  EXPECT_EQ(substitute_prop(P("x & y"), {{"x", Formula::variable("y")}}), P("y & y"));
  // Free lowercase names parse as constants, so build the open formula.
  const Formula f = Formula::forall("x", Formula::atom("P", {Term::var("x"), Term::var("y")}));
  const Formula g = substitute(f, {{"y", Term::app("f", {Term::var("x")})}});
  ASSERT_EQ(g.kind(), FormulaKind::Forall);
  EXPECT_NE(g.name(), "x");
  EXPECT_EQ(g.body(), Formula::atom("P", {Term::var(g.name()), Term::app("f", {Term::var("x")})}));
  EXPECT_EQ(free_object_variables(g), std::set<std::string>({"x"}));
  // Bound occurrences are untouched.
  EXPECT_EQ(substitute(f, {{"x", Term::app("c")}}), f);
}

TEST(Substitute, SimultaneousPropositional) {
  EXPECT_EQ(substitute_prop(P("x -> y"), {{"x", Formula::variable("y")}, {"y", Formula::variable("x")}}), P("y -> x"));
}

TEST(Bookkeeping, VariablesAndLanguage) {
  EXPECT_EQ(prop_variables(P("z -> (x | z) & y")), (std::vector<std::string>{"z", "x", "y"}));
  const auto lang = language_of(P("P(c,d,d) -> exists x. P(c,x,f(d))"));
  ASSERT_EQ(lang.functions().size(), 3u);
  EXPECT_EQ(lang.functions()[0].name, "c");
  EXPECT_EQ(lang.functions()[1].name, "d");
  EXPECT_EQ(lang.functions()[2].arity, 1u);
  EXPECT_EQ(ground_terms(P("P(c,d,d)")).size(), 2u);
}
