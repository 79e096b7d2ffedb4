// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <json.hpp>
#include <set>
#include <sstream>

#include "fvl/cli.hpp"
#include "properties.hpp"

using namespace fvl;
using Json = nlohmann::ordered_json;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

struct Cli {
  int code;
  Json report;
};

Cli run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "fvl");
  args.push_back("--format");
  args.push_back("json");
  std::ostringstream out, err;
  const int code = fvl::cli::run(args, out, err);
  Json j;
  try {
    j = Json::parse(out.str());
  } catch (...) {
    j["unparsed"] = out.str() + err.str();
  }
  return {code, j};
}

std::string str(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

// Flattens a disjunction tree.
void disjuncts(const Formula& f, std::vector<Formula>& out) {
  if (f.is_connective(kJoin)) {
    disjuncts(f.child(0), out);
    disjuncts(f.child(1), out);
  } else {
    out.push_back(f);
  }
}

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (o.pass && secs > limit_s) {
    o.pass = false;
    o.detail = "over the time limit";
  }
  if (!o.pass) ++failures;
  std::printf("%s [%d] %s (%.3f s, limit %.0f s)%s%s\n", o.pass ? "PASS" : "FAIL", id, title, secs, limit_s,
              o.detail.empty() ? "" : ": ", o.detail.c_str());
  std::fflush(stdout);
}

}  // namespace

int main() {
  criterion(1, "non-interpolation witness on {0,a,1} with constants 0,1", 1, [] {
    Outcome o;
    const Cli r = run_cli({"interpolate", "--lattice", "three_a", "--left", "x & (x -> #0)", "--right", "y | (y -> #0)"});
    o.require(r.code == 1, "exit " + std::to_string(r.code));
    o.require(r.report["status"] == "NO", "status " + str(r.report["status"]));
    o.require(r.report["lower"] == "a" && r.report["upper"] == "a",
              "envelopes " + str(r.report["lower"]) + " / " + str(r.report["upper"]));
    std::set<std::string> closed;
    for (const auto& c : r.report["representable"]) closed.insert(str(c["values"]));
    o.require(closed == std::set<std::string>{"0", "1"}, "closed words " + r.report["representable"].dump());
    return o;
  });

  criterion(2, "MC first-order interpolation pipeline", 30, [] {
    Outcome o;
    const Cli r = run_cli({"fo-interpolate", "--lattice", "mc", "--formula",
                       "exists x.(B(x) & forall y. C(y)) -> exists x.(A(x) | B(x))"});
    o.require(r.code == 0, "exit " + std::to_string(r.code) + " " + r.report.dump());
    if (!o.pass) return o;
    const Lattice m = bundled_lattice("mc");
    const Formula I = parse_formula(str(r.report["interpolant"]), m.signature());
    // exists z1 ... exists z5 over a disjunction of B(z_i), each bound
    // variable used once; the bracketing of the disjunction is free.
    Formula body = I;
    std::vector<std::string> bound;
    while (body.kind() == FormulaKind::Exists) {
      bound.push_back(body.name());
      const Formula next = body.body();
      body = next;
    }
    std::vector<Formula> ds;
    disjuncts(body, ds);
    std::multiset<std::string> used;
    bool shape = bound.size() == 5 && ds.size() == 5;
    for (const auto& d : ds) {
      shape = shape && d.kind() == FormulaKind::Atom && d.name() == "B" && d.terms().size() == 1 &&
              d.terms()[0].is_var();
      if (shape) used.insert(d.terms()[0].name);
    }
    shape = shape && used == std::multiset<std::string>(bound.begin(), bound.end());
    o.require(shape, "interpolant " + render(I));
    const Json& steps = r.report["steps"];
    o.require(steps.size() == 5, "steps " + steps.dump());
    if (!o.pass) return o;
    const std::string sk = str(steps[0]["result"]);
    o.require(sk.find("B(c1)") != std::string::npos && sk.find("B(c5)") != std::string::npos, "skolem form " + sk);
    o.require(steps[1]["n"] == 5, "expansion n " + steps[1]["n"].dump());
    std::vector<Formula> ground;
    disjuncts(parse_formula(str(steps[3]["result"]), m.signature()), ground);
    std::set<std::string> atoms;
    for (const auto& g : ground) atoms.insert(render(g));
    o.require(atoms == std::set<std::string>{"B(c1)", "B(c2)", "B(c3)", "B(c4)", "B(c5)"},
              "propositional interpolant " + str(steps[3]["result"]));
    o.require(r.report["smoke"]["passed"] == true, "smoke test");
    return o;
  });

  criterion(3, "Herbrand expansion of P(c,d,d) -> exists x. P(c,x,d)", 1, [] {
    Outcome o;
    const Cli r = run_cli({"herbrand", "--lattice", "mc", "--formula", "P(c,d,d) -> exists x. P(c,x,d)"});
    o.require(r.code == 0, "exit " + std::to_string(r.code));
    o.require(r.report["n"] == 2, "n " + r.report["n"].dump());
    o.require(r.report["expansion"] == "P(c,d,d) -> P(c,c,d) | P(c,d,d)", "E2 " + str(r.report["expansion"]));
    o.require(r.report["next_expansion"] == r.report["expansion"], "E3 " + str(r.report["next_expansion"]));
    return o;
  });

  criterion(4, "closure trace on the three-element table with constant 0", 1, [] {
    Outcome o;
    const Cli zero = run_cli({"closure", "--lattice", "luk3", "--connectives", "->", "--show-columns"});
    o.require(zero.code == 0, "exit " + std::to_string(zero.code));
    o.require(zero.report["trace"] == Json::parse("[1,2]"), "0-variable trace " + zero.report["trace"].dump());
    const Cli one = run_cli({"closure", "--lattice", "luk3", "--vars", "x", "--connectives", "->"});
    o.require(one.report["trace"] == Json::parse("[2,4,6,9,11,12]"), "1-variable trace " + one.report["trace"].dump());
    const Lattice L = bundled_lattice("luk3");
    ClosureOptions co;
    co.connectives = std::vector<std::string>{"->"};
    const auto res = representable_closure(L, {"x"}, co);
    const Elem z = *L.find("0"), one_e = *L.find("1");
    std::size_t count = 0;
    for (const auto& col : res.columns) {
      ++count;
      const bool crisp = (col.values[z] == z || col.values[z] == one_e) && (col.values[one_e] == z || col.values[one_e] == one_e);
      o.require(crisp, "column " + render(col.witness) + " is not 0/1 at 0 and 1");
    }
    o.require(count == 12, std::to_string(count) + " columns");
    return o;
  });

  criterion(5, "residuum on the crisp diamond", 1, [] {
    Outcome o;
    const Cli r = run_cli({"residuum", "--lattice", "diamond"});
    o.require(r.code == 1, "exit " + std::to_string(r.code));
    o.require(r.report["status"] == "NOT_RESIDUATED", "status " + str(r.report["status"]));
    std::set<std::string> cands;
    for (const auto& c : r.report["cases"]) {
      cands.insert(str(c["candidate"]));
      o.require(!str(c["contradiction"]).empty(), "candidate " + str(c["candidate"]) + " not refuted");
    }
    o.require(cands == std::set<std::string>{"0", "u1", "u2", "1"}, "cases " + r.report["cases"].dump());
    o.require(r.report["x"] == "u1" && r.report["y"] == "u2", "pair " + str(r.report["x"]) + "," + str(r.report["y"]));
    return o;
  });

  criterion(6, "quick decision paths", 3, [] {
    Outcome o;
    const Cli none = run_cli({"decide", "--lattice", "classical"});
    o.require(none.code == 1 && none.report["witness"] == "x <= y -> y", "constant-free " + none.report.dump());
    for (const char* name : {"three_a_abar", "classical01"}) {
      const Cli r = run_cli({"decide", "--lattice", name});
      o.require(r.code == 0 && r.report["status"] == "YES", std::string(name) + " " + str(r.report["status"]));
      if (!o.pass) break;
      const Lattice L = bundled_lattice(name);
      const Formula a = parse_formula(str(r.report["sample_a"]), L.signature());
      const Formula b = parse_formula(str(r.report["sample_b"]), L.signature());
      const Formula i = parse_formula(str(r.report["sample_interpolant"]), L.signature());
      o.require(oracle::sandwich(a, i, b, L), std::string(name) + " sandwich");
    }
    return o;
  });

  criterion(7, "200 seeded positive-fragment implications interpolate (classical, top only)", 60, [] {
    Outcome o;
    const auto t = props::positive_fragment(7);
    o.require(t.ok(), t.first);
    o.require(t.checked == 200, std::to_string(t.checked) + " checked");
    return o;
  });

  criterion(8, "property suites", 300, [] {
    Outcome o;
    const auto names = bundled_lattice_names();
    std::uint64_t seed = 800;
    auto suite = [&](const char* what, const props::Tally& t) {
      o.require(t.ok(), std::string(what) + ": " + std::to_string(t.failures) + "/" + std::to_string(t.checked) +
                            " failed, first " + t.first);
      std::printf("       %-28s %s %zu checked, %zu failed\n", what, t.ok() ? "ok  " : "FAIL", t.checked, t.failures);
    };
    props::Tally b, two, coll, ctx, wit, cols, rt;
    std::string two_failing;
    for (const auto& name : names) {
      const Lattice L = bundled_lattice(name);
      b.add(props::prop_b(L, ++seed));
      if (L.size() <= 5) {
        const auto t = props::prop_two(L, ++seed);
        if (!t.ok()) two_failing += " " + name;
        two.add(t);
        wit.add(props::witness_realization(L));
      }
      if (L.size() <= 3) coll.add(props::collapse_lemmas(L, ++seed));
      cols.add(props::column_witnesses(L));
      rt.add(props::round_trip(L, ++seed));
    }
    for (const char* name : {"mc", "luk3", "three_a", "goedel3"})
      ctx.add(props::context_monotonicity(bundled_lattice(name), ++seed));
    suite("implication identities", b);
    suite("variable swap", two);
    if (!two_failing.empty()) std::printf("       variable swap fails on:%s\n", two_failing.c_str());
    suite("context monotonicity", ctx);
    suite("collapse lemmas", coll);
    suite("witness realization", wit);
    suite("closure column witnesses", cols);
    suite("parse/render round trip", rt);
    return o;
  });

  criterion(9, "MC validity spot checks", 1, [] {
    Outcome o;
    const Cli v = run_cli({"validate", "--lattice", "mc"});
    o.require(v.code == 0 && v.report["status"] == "valid", "validate " + v.report.dump());
    const Cli x = run_cli({"valid", "--lattice", "mc", "--formula", "x -> x"});
    o.require(x.code == 0, "x -> x");
    const Lattice m = bundled_lattice("mc");
    auto e = [&](const char* n) { return *m.find(n); };
    for (auto [lo, hi] : std::vector<std::pair<const char*, const char*>>{
             {"0", "b"}, {"0", "g"}, {"b", "bg"}, {"g", "bg"}, {"bg", "1"}, {"0", "1"}}) {
      o.require(m.leq(e(lo), e(hi)) && !m.leq(e(hi), e(lo)), std::string(lo) + " < " + hi);
      o.require(oracle::table_at(m, "->", {e(lo), e(hi)}) == m.top(), std::string(lo) + " -> " + hi);
    }
    o.require(!m.leq(e("b"), e("g")) && !m.leq(e("g"), e("b")), "b, g comparable");
    o.require(m.join(e("b"), e("g")) == e("bg") && m.meet(e("b"), e("g")) == e("0"), "b, g join/meet");
    return o;
  });

  std::printf("%d criteria failed\n", failures);
  return failures;
}
