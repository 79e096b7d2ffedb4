#include "fvl/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "fvl/error.hpp"
#include "fvl/folift.hpp"
#include "fvl/interp.hpp"
#include "fvl/lattice_text.hpp"

namespace fvl::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Config {
  std::string lattice;
  std::string frame;
  std::string mode = "paper";
  std::string formula;
  std::string left;
  std::string right;
  std::vector<std::string> assign;
  std::vector<std::string> vars;
  std::vector<std::string> connectives;
  bool show_columns = false;
  std::size_t n = 1;
  std::optional<std::size_t> bound;

  std::optional<std::size_t> var_cap;
  std::optional<std::size_t> max_levels;
  std::optional<std::size_t> max_columns;
  std::optional<std::uint64_t> max_work;
  std::optional<std::uint64_t> max_pair_work;
  std::optional<std::uint64_t> max_rows;
  std::optional<std::size_t> max_n;
  std::optional<std::size_t> smoke_domain;
  std::optional<std::uint64_t> smoke_structures;
  std::uint64_t seed = 1;

  std::string format = "text";
  std::string output;
};

std::string join_names(const std::vector<Elem>& values, const Lattice& lattice) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? " " : "") + lattice.name(values[i]);
  return out;
}

Json names_of(const std::vector<Elem>& values, const Lattice& lattice) {
  Json out = Json::array();
  for (auto v : values) out.push_back(lattice.name(v));
  return out;
}

std::string path_text(const Path& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.size(); ++i) out += (i ? "," : "") + std::to_string(p[i]);
  return out + "]";
}

std::string quantifier_text(FormulaKind k) { return k == FormulaKind::Forall ? "forall" : "exists"; }

void render_text(const Json& j, std::ostream& os, int indent);

void render_scalar(const Json& j, std::ostream& os) {
  if (j.is_string()) os << j.get<std::string>();
  else if (j.is_null()) os << "-";
  else os << j.dump();
}

void render_text(const Json& j, std::ostream& os, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Json& v = it.value();
    os << pad << it.key() << ":";
    if (v.is_object()) {
      os << "\n";
      render_text(v, os, indent + 2);
    } else if (v.is_array()) {
      bool flat = true;
      for (const auto& e : v) flat = flat && !e.is_object() && !e.is_array();
      if (flat && v.size() <= 16) {
        os << " [";
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i) os << ", ";
          render_scalar(v[i], os);
        }
        os << "]\n";
        continue;
      }
      os << "\n";
      for (const auto& e : v) {
        if (e.is_object()) {
          std::ostringstream inner;
          render_text(e, inner, indent + 4);
          std::string s = inner.str();
          s.replace(0, static_cast<std::size_t>(indent) + 4, pad + "  - ");
          os << s;
        } else if (e.is_array()) {
          os << pad << "  - " << e.dump() << "\n";
        } else {
          os << pad << "  - ";
          render_scalar(e, os);
          os << "\n";
        }
      }
    } else {
      os << " ";
      render_scalar(v, os);
      os << "\n";
    }
  }
}

Json error_json(const Error& e) {
  Json j;
  j["status"] = "error";
  j["error"] = std::string(to_string(e.code()));
  j["message"] = e.what();
  j["witness"] = e.witness();
  return j;
}

ClosureOptions closure_options(const Config& c, ClosureOptions base = {}) {
  if (c.max_levels) base.max_levels = *c.max_levels;
  if (c.max_columns) base.max_columns = *c.max_columns;
  if (c.max_work) base.max_work = *c.max_work;
  if (!c.connectives.empty()) base.connectives = c.connectives;
  return base;
}

InterpolationOptions interpolation_options(const Config& c) {
  InterpolationOptions o;
  o.closure = closure_options(c);
  if (c.max_rows) o.envelope.max_rows = *c.max_rows;
  if (c.var_cap) o.verify_var_cap = *c.var_cap;
  return o;
}

DecideOptions decide_options(const Config& c) {
  DecideOptions o;
  o.bound = c.bound;
  o.closure = closure_options(c, o.closure);
  if (c.max_pair_work) o.max_pair_work = *c.max_pair_work;
  return o;
}

Formula parse(const std::string& text, const Lattice& lattice) { return parse_formula(text, lattice.signature()); }

std::pair<Formula, Formula> sides(const Config& c, const Lattice& lattice) {
  if (!c.left.empty() || !c.right.empty()) {
    if (c.left.empty() || c.right.empty()) throw Error(ErrorCode::Usage, "--left and --right go together");
    return {parse(c.left, lattice), parse(c.right, lattice)};
  }
  if (c.formula.empty()) throw Error(ErrorCode::Usage, "give --formula 'A -> B' or --left/--right");
  Formula f = parse(c.formula, lattice);
  if (!f.is_connective(kImplies)) throw Error(ErrorCode::Usage, "--formula must be an implication A -> B");
  return {f.child(0), f.child(1)};
}

Formula need_formula(const Config& c, const Lattice& lattice) {
  if (c.formula.empty()) throw Error(ErrorCode::Usage, "--formula is required");
  return parse(c.formula, lattice);
}

int cmd_validate(const Config& c, Json& r) {
  Lattice lattice = [&] {
    try {
      return resolve_lattice(c.lattice);
    } catch (const Error& e) {
      switch (e.code()) {
        case ErrorCode::LatticeAxiomViolation:
        case ErrorCode::PolarityViolation:
        case ErrorCode::ImplicationLawViolation:
        case ErrorCode::MissingMandatoryConnective:
        case ErrorCode::UndeclaredConstant:
          break;
        default:
          throw;
      }
      Json err = error_json(e);
      err["status"] = "invalid";
      r.update(err);
      throw kNo;
    }
  }();
  const auto d = lattice.describe();
  r["status"] = "valid";
  r["elements"] = lattice.names();
  Json covers = Json::array();
  for (const auto& [a, b] : d.order) covers.push_back(a + "<" + b);
  r["covers"] = covers;
  Json conns = Json::array();
  for (const auto& decl : lattice.signature().connectives()) {
    std::string pol;
    for (auto p : decl.polarity) pol += p == Polarity::Positive ? '+' : '-';
    conns.push_back(Json{{"name", decl.name}, {"polarity", pol.empty() ? "0" : pol}});
  }
  r["connectives"] = conns;
  Json consts = Json::array();
  for (const auto& k : lattice.constants()) consts.push_back(Json{{"name", k.name}, {"value", lattice.name(k.value)}});
  r["constants"] = consts;
  return kYes;
}

int cmd_eval(const Config& c, const Lattice& lattice, Json& r) {
  Formula f = need_formula(c, lattice);
  Valuation v;
  for (const auto& item : c.assign) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      const auto eq = part.find('=');
      if (eq == std::string::npos) throw Error(ErrorCode::Usage, "--assign expects var=element, got '" + part + "'");
      auto e = lattice.find(part.substr(eq + 1));
      if (!e) throw Error(ErrorCode::UnknownSymbol, "no element '" + part.substr(eq + 1) + "'");
      v.vars.push_back(part.substr(0, eq));
      v.values.push_back(*e);
    }
  }
  r["formula"] = render(f);
  r["valuation"] = render_valuation(v, lattice);
  r["value"] = lattice.name(eval_prop(f, lattice, v));
  return kYes;
}

int cmd_valid(const Config& c, const Lattice& lattice, Json& r) {
  Formula f = need_formula(c, lattice);
  ValidityOptions vo;
  if (c.var_cap) vo.var_cap = *c.var_cap;
  r["formula"] = render(f);
  try {
    auto res = is_valid_prop(f, lattice, vo);
    r["status"] = res.valid ? "valid" : "invalid";
    if (res.countervaluation) {
      r["countervaluation"] = render_valuation(*res.countervaluation, lattice);
      r["value"] = lattice.name(eval_prop(f, lattice, *res.countervaluation));
    }
    r["nodes"] = res.nodes;
    return res.valid ? kYes : kNo;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded) throw;
    r["status"] = "UNKNOWN";
    r["reason"] = e.what();
    return kUnknown;
  }
}

int cmd_closure(const Config& c, const Lattice& lattice, Json& r) {
  auto res = representable_closure(lattice, c.vars, closure_options(c));
  r["vars"] = c.vars;
  r["connectives"] = c.connectives.empty() ? Json("all") : Json(c.connectives);
  r["status"] = res.complete ? "complete" : "UNKNOWN";
  if (!res.complete) r["budget_hit"] = res.budget_hit;
  r["trace"] = res.trace;
  r["columns"] = res.columns.size();
  r["work"] = res.work;
  if (c.show_columns) {
    Json cols = Json::array();
    for (std::size_t i = 0; i < res.columns.size(); ++i)
      cols.push_back(Json{{"values", join_names(res.columns[i].values, lattice)},
                          {"witness", render(res.columns[i].witness)},
                          {"level", res.level_of[i]}});
    r["table"] = cols;
  }
  return res.complete ? kYes : kUnknown;
}

int cmd_constants(const Config& c, const Lattice& lattice, Json& r) {
  auto res = representable_closure(lattice, {}, closure_options(c));
  r["status"] = res.complete ? "complete" : "UNKNOWN";
  r["values"] = names_of(constant_values(lattice), lattice);
  Json words = Json::array();
  for (const auto& col : res.columns)
    words.push_back(Json{{"value", lattice.name(col.values[0])}, {"witness", render(col.witness)}});
  r["witnesses"] = words;
  r["trace"] = res.trace;
  return res.complete ? kYes : kUnknown;
}

int cmd_interpolate(const Config& c, const Lattice& lattice, Json& r) {
  auto [a, b] = sides(c, lattice);
  r["left"] = render(a);
  r["right"] = render(b);
  auto v = find_prop_interpolant(a, b, lattice, interpolation_options(c));
  r["status"] = std::string(to_string(v.status));
  r["interpolant"] = v.interpolant ? Json(render(*v.interpolant)) : Json();
  r["shared"] = v.envelopes.shared;
  r["left_only"] = v.envelopes.left;
  r["right_only"] = v.envelopes.right;
  r["lower"] = join_names(v.envelopes.lower, lattice);
  r["upper"] = join_names(v.envelopes.upper, lattice);
  r["closure_trace"] = v.trace;
  r["closure_columns"] = v.columns_seen;
  if (v.status == Verdict::No) {
    Json rep = Json::array();
    for (const auto& col : v.representable)
      rep.push_back(Json{{"values", join_names(col.values, lattice)}, {"witness", render(col.witness)}});
    r["representable"] = rep;
  }
  if (!v.budget_hit.empty()) r["budget_hit"] = v.budget_hit;
  r["work"] = v.work;
  return v.status == Verdict::Yes ? kYes : v.status == Verdict::No ? kNo : kUnknown;
}

int cmd_decide(const Config& c, const Lattice& lattice, Json& r) {
  auto d = decide_interpolation(lattice, decide_options(c));
  r["status"] = std::string(to_string(d.status));
  r["reason"] = d.reason;
  r["constant_values"] = names_of(d.constant_values, lattice);
  if (d.witness_a && d.witness_b) {
    r["witness"] = render(*d.witness_a) + " <= " + render(*d.witness_b);
    r["witness_a"] = render(*d.witness_a);
    r["witness_b"] = render(*d.witness_b);
    r["gap_shared"] = d.gap_shared;
    r["gap_lower"] = join_names(d.gap_lower, lattice);
    r["gap_upper"] = join_names(d.gap_upper, lattice);
  }
  if (d.sample_interpolant) {
    r["sample_a"] = render(*d.sample_a);
    r["sample_b"] = render(*d.sample_b);
    r["sample_interpolant"] = render(*d.sample_interpolant);
  }
  r["progress"] = d.progress;
  return d.status == Verdict::Yes ? kYes : d.status == Verdict::No ? kNo : kUnknown;
}

int cmd_spectrum(const Config& c, const Lattice& lattice, Json& r) {
  auto s = spectrum(lattice, decide_options(c));
  Json entries = Json::array();
  Json members = Json::array();
  bool unknown = false;
  for (const auto& e : s.entries) {
    entries.push_back(Json{{"subset", names_of(e.subset, lattice)}, {"status", std::string(to_string(e.status))},
                           {"reason", e.reason}});
    if (e.status == Verdict::Yes) members.push_back(names_of(e.subset, lattice));
    unknown = unknown || e.status == Verdict::Unknown;
  }
  r["status"] = unknown ? "UNKNOWN" : "complete";
  r["spectrum"] = members;
  r["entries"] = entries;
  r["monotonicity_violations"] = s.monotonicity_violations;
  return unknown ? kUnknown : kYes;
}

Json skolem_record(const SkolemResult& sk) {
  Json rec = Json::array();
  for (const auto& e : sk.record)
    rec.push_back(Json{{"path", path_text(e.path)},
                       {"quantifier", quantifier_text(e.quantifier)},
                       {"variable", e.variable},
                       {"functions", e.functions},
                       {"arguments", e.arguments}});
  return rec;
}

int cmd_skolemize(const Config& c, const Lattice& lattice, Json& r) {
  Formula f = need_formula(c, lattice);
  auto sk = skolemize(f, lattice);
  r["formula"] = render(f);
  r["skolemized"] = render(sk.formula);
  r["record"] = skolem_record(sk);
  return kYes;
}

int cmd_expand(const Config& c, const Lattice& lattice, Json& r) {
  Formula f = need_formula(c, lattice);
  auto terms = enumerate_closed_terms(language_of(f), c.n);
  Json ts = Json::array();
  for (const auto& t : terms.terms) ts.push_back(render(t));
  r["formula"] = render(f);
  r["n"] = c.n;
  r["terms"] = ts;
  r["expansion"] = render(expand_n(f, c.n, lattice.signature()));
  return kYes;
}

int cmd_herbrand(const Config& c, const Lattice& lattice, Json& r) {
  Formula f = need_formula(c, lattice);
  r["formula"] = render(f);
  Formula E = f;
  if (has_strong_quantifier(f, lattice.signature())) {
    E = skolemize(f, lattice).formula;
    r["skolemized"] = render(E);
  }
  const std::size_t max_n = c.max_n.value_or(8);
  auto h = find_herbrand_expansion(E, lattice, max_n, c.var_cap.value_or(24));
  r["status"] = h.found ? "valid" : h.terms_exhausted ? "invalid" : "UNKNOWN";
  r["tried"] = h.tried;
  r["terms_exhausted"] = h.terms_exhausted;
  if (h.found) {
    r["n"] = h.n;
    r["expansion"] = render(h.expansion);
    r["next_expansion"] = render(expand_n(E, h.n + 1, lattice.signature()));
    r["pruned"] = render(h.pruned);
    return kYes;
  }
  return h.terms_exhausted ? kNo : kUnknown;
}

int cmd_fo_interpolate(const Config& c, const Lattice& lattice, Json& r) {
  Formula f = need_formula(c, lattice);
  FoOptions o;
  if (c.max_n) o.max_n = *c.max_n;
  if (c.var_cap) o.var_cap = *c.var_cap;
  o.prop = interpolation_options(c);
  if (c.smoke_domain) o.smoke.max_domain = *c.smoke_domain;
  if (c.smoke_structures) o.smoke.max_structures = *c.smoke_structures;
  o.smoke.seed = c.seed;
  r["formula"] = render(f);
  FoInterpolation fo;
  try {
    fo = fo_interpolate(f, lattice, o);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::UnknownValidity) {
      r.update(error_json(e));
      r["status"] = "UNKNOWN";
      return kUnknown;
    }
    if (e.code() == ErrorCode::PropInterpolationFailed || e.code() == ErrorCode::SmokeTestFailed) {
      const bool unknown = std::string(e.what()).find("UNKNOWN") != std::string::npos;
      r.update(error_json(e));
      r["status"] = unknown ? "UNKNOWN" : "NO";
      return unknown ? kUnknown : kNo;
    }
    throw;
  }
  r["status"] = "YES";
  r["interpolant"] = render(fo.generalized.interpolant);
  Json steps = Json::array();
  steps.push_back(Json{{"step", "skolemize"}, {"result", render(fo.skolem.formula)}});
  steps.push_back(Json{{"step", "expand"}, {"n", fo.herbrand.n}, {"result", render(fo.herbrand.expansion)}});
  steps.push_back(Json{{"step", "prune"}, {"result", render(fo.herbrand.pruned)}});
  steps.push_back(Json{{"step", "propositional interpolant"}, {"result", render(fo.ground_interpolant)}});
  steps.push_back(Json{{"step", "generalize"}, {"result", render(fo.generalized.interpolant)}});
  r["steps"] = steps;
  r["A"] = render(fo.A);
  r["B"] = render(fo.B);
  r["skA"] = render(fo.skA);
  r["skB"] = render(fo.skB);
  r["skolem_record"] = skolem_record(fo.skolem);
  Json dict = Json::array();
  for (const auto& [p, atom] : fo.abstraction.dictionary) dict.push_back(p + " = " + render(atom));
  r["abstraction"] = dict;
  r["prop_a"] = render(fo.prop_a);
  r["prop_b"] = render(fo.prop_b);
  r["prop_interpolant"] = render(*fo.prop.interpolant);
  Json elim = Json::array();
  for (const auto& s : fo.generalized.steps)
    elim.push_back(Json{{"term", render(s.term)}, {"variable", s.variable}, {"quantifier", quantifier_text(s.quantifier)}});
  r["eliminations"] = elim;
  r["notes"] = fo.notes;
  r["smoke"] = Json{{"structures", fo.smoke.structures}, {"sampled", fo.smoke.sampled}, {"passed", fo.smoke.passed}};
  return kYes;
}

int cmd_kripke(const Config& c, Json& r) {
  if (c.frame.empty()) throw Error(ErrorCode::Usage, "--frame is required");
  KripkeFrame frame = load_frame_file(c.frame);
  ImplicationMode mode;
  if (c.mode == "heyting") mode = ImplicationMode::Heyting;
  else if (c.mode == "paper") mode = ImplicationMode::PaperTable;
  else throw Error(ErrorCode::Usage, "--mode must be heyting or paper");
  Lattice lattice = upset_lattice(frame, mode);
  r["frame"] = c.frame;
  r["mode"] = c.mode;
  r["elements"] = lattice.names();
  r["lattice"] = lattice.to_text();
  return kYes;
}

int cmd_residuum(const Lattice& lattice, Json& r) {
  auto res = derive_residuum(lattice);
  if (auto* m = std::get_if<MonoidTable>(&res)) {
    r["status"] = "residuated";
    Json rows = Json::array();
    for (std::size_t x = 0; x < lattice.size(); ++x) {
      std::vector<Elem> row(m->table.begin() + static_cast<std::ptrdiff_t>(x * lattice.size()),
                            m->table.begin() + static_cast<std::ptrdiff_t>((x + 1) * lattice.size()));
      rows.push_back(join_names(row, lattice));
    }
    r["fusion"] = rows;
    return kYes;
  }
  const auto& n = std::get<NotResiduated>(res);
  r["status"] = "NOT_RESIDUATED";
  r["x"] = lattice.name(n.x);
  r["y"] = lattice.name(n.y);
  r["law"] = n.law;
  r["detail"] = n.detail;
  Json cases = Json::array();
  for (const auto& k : n.cases)
    cases.push_back(Json{{"candidate", lattice.name(k.candidate)}, {"contradiction", k.contradiction}});
  r["cases"] = cases;
  return kNo;
}

void add_common(CLI::App* sub, Config& c, bool needs_lattice) {
  auto* l = sub->add_option("--lattice,-l", c.lattice, "lattice file or bundled name");
  if (needs_lattice) l->required();
  sub->add_option("--format", c.format, "report format")->check(CLI::IsMember({"text", "json"}));
  sub->add_option("--output,-o", c.output, "write the report to a file");
  sub->add_option("--seed", c.seed, "seed for sampled checks");
  sub->add_option("--var-cap", c.var_cap, "variable cap for validity")->envname("FVL_VAR_CAP")->check(CLI::PositiveNumber);
  sub->add_option("--max-levels", c.max_levels, "closure level cap")->envname("FVL_MAX_LEVELS")->check(CLI::PositiveNumber);
  sub->add_option("--max-columns", c.max_columns, "closure column cap")->envname("FVL_MAX_COLUMNS")->check(CLI::PositiveNumber);
  sub->add_option("--max-work", c.max_work, "closure work cap")->envname("FVL_MAX_WORK")->check(CLI::PositiveNumber);
  sub->add_option("--max-pair-work", c.max_pair_work, "decision pair work cap")->envname("FVL_MAX_PAIR_WORK")->check(CLI::PositiveNumber);
  sub->add_option("--max-rows", c.max_rows, "envelope row cap")->envname("FVL_MAX_ROWS")->check(CLI::PositiveNumber);
  sub->add_option("--max-n", c.max_n, "Herbrand expansion cap")->envname("FVL_MAX_N")->check(CLI::PositiveNumber);
  sub->add_option("--smoke-domain", c.smoke_domain, "smoke-test domain cap")->envname("FVL_SMOKE_DOMAIN")->check(CLI::PositiveNumber);
  sub->add_option("--smoke-structures", c.smoke_structures, "smoke-test structures per domain size")
      ->envname("FVL_SMOKE_STRUCTURES")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Interpolation toolkit for finite lattice-valued logics", "fvl"};
  app.require_subcommand(1);
  Config c;

  auto* validate = app.add_subcommand("validate", "check a lattice file");
  auto* eval = app.add_subcommand("eval", "evaluate a propositional formula");
  auto* valid = app.add_subcommand("valid", "decide propositional validity");
  auto* closure = app.add_subcommand("closure", "representable functions over variables");
  auto* constants = app.add_subcommand("constants", "values of closed words");
  auto* interpolate = app.add_subcommand("interpolate", "propositional interpolant for A -> B");
  auto* decide = app.add_subcommand("decide", "does the lattice interpolate");
  auto* spec = app.add_subcommand("spectrum", "constant sets that make the lattice interpolate");
  auto* skolem = app.add_subcommand("skolemize", "replace strong quantifiers");
  auto* expand = app.add_subcommand("expand", "Herbrand expansion E_n");
  auto* herbrand = app.add_subcommand("herbrand", "search for a valid Herbrand expansion");
  auto* fo = app.add_subcommand("fo-interpolate", "first-order interpolant for A -> B");
  auto* kripke = app.add_subcommand("kripke", "up-set lattice of a Kripke frame");
  auto* residuum = app.add_subcommand("residuum", "derive the residuated fusion");

  for (auto* s : {validate, eval, valid, closure, constants, interpolate, decide, spec, skolem, expand, herbrand, fo,
                  residuum})
    add_common(s, c, true);
  add_common(kripke, c, false);
  for (auto* s : {eval, valid, interpolate, skolem, expand, herbrand, fo})
    s->add_option("--formula,-f", c.formula, "formula");
  eval->add_option("--assign,-a", c.assign, "var=element, repeatable or comma separated");
  interpolate->add_option("--left", c.left, "antecedent");
  interpolate->add_option("--right", c.right, "succedent");
  for (auto* s : {closure, constants, interpolate})
    s->add_option("--connectives", c.connectives, "restrict the closure to these connectives")->delimiter(',');
  closure->add_option("--vars", c.vars, "variables")->delimiter(',');
  closure->add_flag("--show-columns", c.show_columns, "list every column with its witness");
  decide->add_option("--bound", c.bound, "bounded mode")->check(CLI::PositiveNumber);
  spec->add_option("--bound", c.bound, "bounded mode")->check(CLI::PositiveNumber);
  expand->add_option("--n,-n", c.n, "number of closed terms")->check(CLI::PositiveNumber);
  kripke->add_option("--frame", c.frame, "frame file")->required();
  kripke->add_option("--mode", c.mode, "heyting or paper");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kYes;
    }
    err << "usage error: " << e.what() << "\n" << app.help();
    return kInputError;
  }

  CLI::App* sub = app.get_subcommands().front();
  Json report;
  report["command"] = sub->get_name();
  if (!c.lattice.empty()) report["lattice"] = c.lattice;
  int code = kInputError;
  try {
    if (sub == validate) {
      code = cmd_validate(c, report);
    } else if (sub == kripke) {
      code = cmd_kripke(c, report);
    } else {
      const Lattice lattice = resolve_lattice(c.lattice);
      if (sub == eval) code = cmd_eval(c, lattice, report);
      else if (sub == valid) code = cmd_valid(c, lattice, report);
      else if (sub == closure) code = cmd_closure(c, lattice, report);
      else if (sub == constants) code = cmd_constants(c, lattice, report);
      else if (sub == interpolate) code = cmd_interpolate(c, lattice, report);
      else if (sub == decide) code = cmd_decide(c, lattice, report);
      else if (sub == spec) code = cmd_spectrum(c, lattice, report);
      else if (sub == skolem) code = cmd_skolemize(c, lattice, report);
      else if (sub == expand) code = cmd_expand(c, lattice, report);
      else if (sub == herbrand) code = cmd_herbrand(c, lattice, report);
      else if (sub == fo) code = cmd_fo_interpolate(c, lattice, report);
      else if (sub == residuum) code = cmd_residuum(lattice, report);
    }
  } catch (ExitCode e) {
    code = e;
  } catch (const Error& e) {
    report.update(error_json(e));
    code = e.code() == ErrorCode::BudgetExceeded ? kUnknown : kInputError;
    if (e.code() == ErrorCode::Usage) err << "usage error: " << e.what() << "\n";
  }

  std::ostringstream text;
  if (c.format == "json") text << report.dump(2) << "\n";
  else render_text(report, text, 0);
  if (c.output.empty()) {
    out << text.str();
  } else {
    std::ofstream file(c.output);
    if (!file) {
      err << "cannot write " << c.output << "\n";
      return kInputError;
    }
    file << text.str();
  }
  return code;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace fvl::cli
