#include "fvl/propcore.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "fvl/error.hpp"
#include "fvl/syntax.hpp"

namespace fvl {

std::optional<Elem> Valuation::get(std::string_view var) const {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == var) return values[i];
  return std::nullopt;
}

std::uint64_t valuation_count(std::size_t lattice_size, std::size_t vars) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < vars; ++i) {
    n *= lattice_size;
    if (n > (1ULL << 40)) throw Error(ErrorCode::BudgetExceeded, "valuation space too large");
  }
  return n;
}

std::vector<Elem> valuation_at(std::uint64_t index, std::size_t lattice_size, std::size_t vars) {
  std::vector<Elem> v(vars);
  for (std::size_t i = vars; i-- > 0;) {
    v[i] = static_cast<Elem>(index % lattice_size);
    index /= lattice_size;
  }
  return v;
}

CompiledFormula::CompiledFormula(const Formula& f, const Lattice& lattice, std::vector<std::string> vars)
    : lattice_(&lattice), vars_(std::move(vars)) {
  std::function<std::uint32_t(const Formula&)> compile = [&](const Formula& g) -> std::uint32_t {
    Op op{};
    switch (g.kind()) {
      case FormulaKind::Variable: {
        auto it = std::find(vars_.begin(), vars_.end(), g.name());
        if (it == vars_.end()) throw Error(ErrorCode::UnboundVariable, "variable '" + g.name() + "' has no value");
        op = {Op::Var, static_cast<std::uint32_t>(it - vars_.begin()), {}};
        break;
      }
      case FormulaKind::Constant: {
        auto value = lattice.constant(g.name());
        if (!value) throw Error(ErrorCode::UndeclaredConstant, "constant #" + g.name() + " is not declared");
        op = {Op::Const, *value, {}};
        break;
      }
      case FormulaKind::Connective: {
        const auto& tables = lattice.connectives();
        std::size_t t = 0;
        while (t < tables.size() && tables[t].decl.name != g.name()) ++t;
        if (t == tables.size()) throw Error(ErrorCode::UnknownSymbol, "connective '" + g.name() + "' not in lattice");
        if (tables[t].decl.arity() != g.children().size())
          throw Error(ErrorCode::ArityMismatch, "connective '" + g.name() + "' arity");
        op = {Op::Apply, static_cast<std::uint32_t>(t), {}};
        for (const auto& c : g.children()) op.args.push_back(compile(c));
        break;
      }
      default: throw Error(ErrorCode::NotPropositional, "formula is not a propositional word: " + render(g));
    }
    ops_.push_back(std::move(op));
    return static_cast<std::uint32_t>(ops_.size() - 1);
  };
  compile(f);
}

Elem CompiledFormula::eval(std::span<const Elem> values) const {
  std::vector<Elem> val(ops_.size());
  const std::size_t n = lattice_->size();
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    const Op& op = ops_[i];
    switch (op.kind) {
      case Op::Var: val[i] = values[op.index]; break;
      case Op::Const: val[i] = static_cast<Elem>(op.index); break;
      case Op::Apply: {
        std::size_t idx = 0;
        for (auto a : op.args) idx = idx * n + val[a];
        val[i] = lattice_->connectives()[op.index].table[idx];
        break;
      }
    }
  }
  return val.back();
}

void CompiledFormula::eval_block(std::span<const Elem> outer, std::span<const std::size_t> inner,
                                 std::vector<Elem>& out) const {
  const std::size_t n = lattice_->size();
  const std::size_t rows = valuation_count(n, inner.size());
  // Stride of each inner variable in the block's lexicographic order.
  std::vector<std::size_t> stride(vars_.size(), 0);
  std::vector<bool> is_inner(vars_.size(), false);
  {
    std::size_t s = 1;
    for (std::size_t k = inner.size(); k-- > 0;) {
      stride[inner[k]] = s;
      is_inner[inner[k]] = true;
      s *= n;
    }
  }
  std::vector<std::vector<Elem>> val(ops_.size());
  std::vector<bool> scalar(ops_.size(), false);
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    const Op& op = ops_[i];
    auto& v = val[i];
    if (op.kind == Op::Const || (op.kind == Op::Var && !is_inner[op.index])) {
      v.assign(1, op.kind == Op::Const ? static_cast<Elem>(op.index) : outer[op.index]);
      scalar[i] = true;
    } else if (op.kind == Op::Var) {
      v.resize(rows);
      const std::size_t st = stride[op.index];
      for (std::size_t r = 0; r < rows; ++r) v[r] = static_cast<Elem>((r / st) % n);
    } else {
      const auto& table = lattice_->connectives()[op.index].table;
      bool all_scalar = true;
      for (auto a : op.args) all_scalar = all_scalar && scalar[a];
      const std::size_t len = all_scalar ? 1 : rows;
      scalar[i] = all_scalar;
      v.resize(len);
      if (op.args.size() == 2) {
        const auto& x = val[op.args[0]];
        const auto& y = val[op.args[1]];
        const bool sx = scalar[op.args[0]], sy = scalar[op.args[1]];
        for (std::size_t r = 0; r < len; ++r) v[r] = table[(sx ? x[0] : x[r]) * n + (sy ? y[0] : y[r])];
      } else {
        for (std::size_t r = 0; r < len; ++r) {
          std::size_t idx = 0;
          for (auto a : op.args) idx = idx * n + (scalar[a] ? val[a][0] : val[a][r]);
          v[r] = table[idx];
        }
      }
    }
  }
  out.resize(rows);
  if (scalar.back()) std::fill(out.begin(), out.end(), val.back()[0]);
  else out = std::move(val.back());
}

std::vector<Elem> CompiledFormula::column() const {
  std::vector<std::size_t> inner(vars_.size());
  for (std::size_t i = 0; i < inner.size(); ++i) inner[i] = i;
  std::vector<Elem> outer(vars_.size(), 0), out;
  eval_block(outer, inner, out);
  return out;
}

std::pair<Elem, Elem> CompiledFormula::bounds(std::span<const Elem> values, std::span<const std::uint8_t> assigned) const {
  const std::size_t n = lattice_->size();
  std::vector<Elem> lo(ops_.size()), hi(ops_.size());
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    const Op& op = ops_[i];
    switch (op.kind) {
      case Op::Var:
        if (assigned[op.index]) lo[i] = hi[i] = values[op.index];
        else {
          lo[i] = lattice_->bottom();
          hi[i] = lattice_->top();
        }
        break;
      case Op::Const: lo[i] = hi[i] = static_cast<Elem>(op.index); break;
      case Op::Apply: {
        const auto& ct = lattice_->connectives()[op.index];
        std::size_t li = 0, hi_idx = 0;
        for (std::size_t k = 0; k < op.args.size(); ++k) {
          const auto a = op.args[k];
          const bool pos = ct.decl.polarity[k] == Polarity::Positive;
          li = li * n + (pos ? lo[a] : hi[a]);
          hi_idx = hi_idx * n + (pos ? hi[a] : lo[a]);
        }
        lo[i] = ct.table[li];
        hi[i] = ct.table[hi_idx];
        break;
      }
    }
  }
  return {lo.back(), hi.back()};
}

Elem eval_prop(const Formula& f, const Lattice& lattice, const Valuation& v) {
  CompiledFormula cf(f, lattice, v.vars);
  return cf.eval(v.values);
}

std::vector<Elem> column_of(const Formula& f, const Lattice& lattice, const std::vector<std::string>& vars) {
  return CompiledFormula(f, lattice, vars).column();
}

ValidityResult is_valid_prop(const Formula& f, const Lattice& lattice, const ValidityOptions& options) {
  std::vector<std::string> order;
  if (options.order) {
    order = *options.order;
    for (const auto& v : prop_variables(f))
      if (std::find(order.begin(), order.end(), v) == order.end()) order.push_back(v);
  } else if (f.is_connective(kImplies)) {
    const auto left = prop_variables(f.child(0));
    const auto right = prop_variables(f.child(1));
    for (const auto& v : left)
      if (std::find(right.begin(), right.end(), v) != right.end()) order.push_back(v);
    for (const auto& v : prop_variables(f))
      if (std::find(order.begin(), order.end(), v) == order.end()) order.push_back(v);
  } else {
    order = prop_variables(f);
  }
  if (order.size() > options.var_cap)
    throw Error(ErrorCode::BudgetExceeded, std::to_string(order.size()) + " variables exceed the cap of " +
                                               std::to_string(options.var_cap));
  CompiledFormula cf(f, lattice, order);
  const std::size_t nv = order.size();
  const std::size_t m = lattice.size();
  const Elem top = lattice.top();
  std::vector<Elem> values(nv, 0);
  std::vector<std::uint8_t> assigned(nv, 0);
  ValidityResult result;
  // Depth-first over the decision order, values in index order.
  std::function<bool(std::size_t)> search = [&](std::size_t depth) -> bool {
    ++result.nodes;
    auto [lo, hi] = cf.bounds(values, assigned);
    if (lo == top) return true;
    if (hi != top || depth == nv) {
      // Every completion is a countervaluation; take the least one.
      Valuation cv{order, values};
      for (std::size_t k = depth; k < nv; ++k) cv.values[k] = 0;
      result.valid = false;
      result.countervaluation = std::move(cv);
      return false;
    }
    assigned[depth] = 1;
    for (std::size_t e = 0; e < m; ++e) {
      values[depth] = static_cast<Elem>(e);
      if (!search(depth + 1)) return false;
    }
    assigned[depth] = 0;
    values[depth] = 0;
    return true;
  };
  search(0);
  return result;
}

std::optional<std::size_t> ClosureResult::find(std::span<const Elem> values) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (std::equal(values.begin(), values.end(), columns[i].values.begin(), columns[i].values.end())) return i;
  return std::nullopt;
}

namespace {

int precedence_of(std::string_view name, std::size_t arity) {
  if (arity != 2) return 4;
  if (name == kImplies) return 1;
  if (name == kJoin) return 2;
  if (name == kMeet) return 3;
  return 4;
}

bool wraps(int parent, std::size_t position, int child) {
  if (parent == 4) return false;
  if (parent == 1) return position == 0 && child <= 1;
  return position == 0 ? child < parent : child <= parent;
}

std::string key_of(const std::vector<Elem>& values) { return std::string(values.begin(), values.end()); }

}  // namespace

ClosureDriver::ClosureDriver(const Lattice& lattice, std::vector<std::string> vars, ClosureOptions options)
    : lattice_(&lattice), options_(std::move(options)) {
  result_.vars = std::move(vars);
  const std::size_t m = lattice.size();
  const std::size_t nv = result_.vars.size();
  rows_ = valuation_count(m, nv);
  const auto& tables = lattice.connectives();
  for (std::size_t t = 0; t < tables.size(); ++t) {
    if (options_.connectives) {
      const auto& allowed = *options_.connectives;
      if (std::find(allowed.begin(), allowed.end(), tables[t].decl.name) == allowed.end()) continue;
    }
    tables_.push_back(t);
  }
  for (std::size_t i = 0; i < nv; ++i) {
    std::vector<Elem> col(rows_);
    std::size_t stride = 1;
    for (std::size_t k = i + 1; k < nv; ++k) stride *= m;
    for (std::size_t r = 0; r < rows_; ++r) col[r] = static_cast<Elem>((r / stride) % m);
    add_column(std::move(col), Formula::variable(result_.vars[i]), result_.vars[i], 0);
  }
  for (const auto& c : lattice.constants())
    add_column(std::vector<Elem>(rows_, c.value), Formula::constant(c.name), "#" + c.name, 0);
  if (!result_.columns.empty()) result_.trace.push_back(result_.columns.size());
  delta_begin_ = 0;
}

void ClosureDriver::add_column(std::vector<Elem> values, Formula witness, std::string text, std::size_t level) {
  auto [it, inserted] = index_.emplace(key_of(values), result_.columns.size());
  if (!inserted) return;
  precedence_.push_back(witness.kind() == FormulaKind::Connective
                            ? precedence_of(witness.name(), witness.children().size())
                            : 4);
  texts_.push_back(std::move(text));
  result_.level_of.push_back(level);
  result_.columns.push_back({result_.vars, std::move(values), std::move(witness)});
}

bool ClosureDriver::charge(std::uint64_t work) {
  if (result_.work + work > options_.max_work) {
    result_.budget_hit = "max_work";
    return false;
  }
  result_.work += work;
  return true;
}

std::size_t ClosureDriver::text_length(std::size_t table, std::span<const std::size_t> args) const {
  const auto& decl = lattice_->connectives()[table].decl;
  const int p = precedence_of(decl.name, args.size());
  std::size_t len = 0;
  for (std::size_t k = 0; k < args.size(); ++k)
    len += texts_[args[k]].size() + (wraps(p, k, precedence_[args[k]]) ? 2 : 0);
  if (p == 4) return len + decl.name.size() + 2 + (args.empty() ? 0 : args.size() - 1);
  return len + decl.name.size() + 2;
}

std::string ClosureDriver::text_of(std::size_t table, std::span<const std::size_t> args) const {
  const auto& decl = lattice_->connectives()[table].decl;
  const int p = precedence_of(decl.name, args.size());
  std::string s;
  if (p == 4) {
    s = decl.name + "(";
    for (std::size_t k = 0; k < args.size(); ++k) {
      if (k) s += ',';
      s += texts_[args[k]];
    }
    return s + ")";
  }
  for (std::size_t k = 0; k < 2; ++k) {
    if (k) s += " " + decl.name + " ";
    const bool w = wraps(p, k, precedence_[args[k]]);
    if (w) s += '(';
    s += texts_[args[k]];
    if (w) s += ')';
  }
  return s;
}

Formula ClosureDriver::formula_of(const Candidate& c) const {
  std::vector<Formula> kids;
  for (auto a : c.args) kids.push_back(result_.columns[a].witness);
  return Formula::connective(lattice_->connectives()[c.table].decl.name, std::move(kids));
}

namespace {

// Odometer over tuples in [0, size)^arity that contain at least one index
// >= delta.
template <typename F>
void for_each_tuple(std::size_t arity, std::size_t size, std::size_t delta, F&& f) {
  if (arity == 0) {
    f(std::vector<std::size_t>{});
    return;
  }
  if (size == 0) return;
  std::vector<std::size_t> t(arity, 0);
  while (true) {
    bool has_delta = false;
    for (auto x : t) has_delta = has_delta || x >= delta;
    if (has_delta && !f(t)) return;
    std::size_t k = arity;
    while (k > 0) {
      if (++t[k - 1] < size) break;
      t[k - 1] = 0;
      --k;
    }
    if (k == 0) return;
  }
}

std::uint64_t tuple_count(std::size_t arity, std::size_t size, std::size_t delta) {
  long double all = 1, old = 1;
  for (std::size_t k = 0; k < arity; ++k) {
    all *= size;
    old *= delta;
  }
  const long double n = all - old;
  return n > 1e18L ? static_cast<std::uint64_t>(1e18) : static_cast<std::uint64_t>(n);
}

}  // namespace

bool ClosureDriver::step() {
  if (finished()) return false;
  if (options_.max_levels && levels_done_ >= *options_.max_levels) {
    result_.budget_hit = "max_levels";
    return false;
  }
  const std::size_t size = result_.columns.size();
  const std::size_t delta = delta_begin_;
  const std::size_t n = lattice_->size();
  std::unordered_map<std::string, Candidate> fresh;
  std::vector<Elem> tmp(rows_);
  for (std::size_t t : tables_) {
    const auto& ct = lattice_->connectives()[t];
    const std::size_t arity = ct.decl.arity();
    if (levels_done_ > 0 && arity == 0) continue;
    if (!charge(tuple_count(arity, size, arity == 0 ? 0 : delta) * std::max<std::size_t>(rows_, 1))) return false;
    for_each_tuple(arity, size, delta, [&](const std::vector<std::size_t>& args) {
      if (arity == 2) {
        const auto& x = result_.columns[args[0]].values;
        const auto& y = result_.columns[args[1]].values;
        for (std::size_t r = 0; r < rows_; ++r) tmp[r] = ct.table[x[r] * n + y[r]];
      } else {
        for (std::size_t r = 0; r < rows_; ++r) {
          std::size_t idx = 0;
          for (auto a : args) idx = idx * n + result_.columns[a].values[r];
          tmp[r] = ct.table[idx];
        }
      }
      std::string key(tmp.begin(), tmp.end());
      if (index_.count(key)) return true;
      auto it = fresh.find(key);
      if (it == fresh.end()) {
        fresh.emplace(std::move(key), Candidate{t, args, text_of(t, args)});
      } else {
        const std::size_t len = text_length(t, args);
        if (len <= it->second.text.size()) {
          std::string text = text_of(t, args);
          if (len < it->second.text.size() || text < it->second.text) it->second = Candidate{t, args, std::move(text)};
        }
      }
      return true;
    });
  }
  ++levels_done_;
  if (fresh.empty()) {
    fixpoint_ = true;
    result_.complete = true;
    return false;
  }
  if (size + fresh.size() > options_.max_columns) {
    result_.budget_hit = "max_columns";
    return false;
  }
  std::vector<std::pair<std::string, Candidate>> ordered(std::make_move_iterator(fresh.begin()),
                                                         std::make_move_iterator(fresh.end()));
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    const auto& x = a.second.text;
    const auto& y = b.second.text;
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  delta_begin_ = size;
  for (auto& [key, cand] : ordered) {
    Formula w = formula_of(cand);
    add_column(std::vector<Elem>(key.begin(), key.end()), std::move(w), std::move(cand.text), levels_done_);
  }
  result_.trace.push_back(result_.columns.size());
  return true;
}

ClosureDriver::Probe ClosureDriver::probe_next_level(const std::function<bool(std::size_t, Elem)>& row_ok) {
  Probe probe;
  if (finished()) return probe;
  const std::size_t size = result_.columns.size();
  const std::size_t delta = delta_begin_;
  const std::size_t n = lattice_->size();

  struct Shape {
    std::size_t table;
    std::size_t arity;
    std::size_t overhead;
    // Per argument position: columns grouped by rendered length there.
    std::vector<std::map<std::size_t, std::vector<std::size_t>>> groups;
  };
  std::vector<Shape> shapes;
  std::size_t max_total = 0;
  for (std::size_t t : tables_) {
    const auto& decl = lattice_->connectives()[t].decl;
    const std::size_t arity = decl.arity();
    if (arity == 0 && levels_done_ > 0) continue;
    const int p = precedence_of(decl.name, arity);
    Shape s{t, arity, p == 4 ? decl.name.size() + 2 + (arity ? arity - 1 : 0) : decl.name.size() + 2, {}};
    s.groups.resize(arity);
    std::size_t worst = s.overhead;
    for (std::size_t k = 0; k < arity; ++k) {
      std::size_t longest = 0;
      for (std::size_t c = 0; c < size; ++c) {
        const std::size_t len = texts_[c].size() + (wraps(p, k, precedence_[c]) ? 2 : 0);
        s.groups[k][len].push_back(c);
        longest = std::max(longest, len);
      }
      worst += longest;
    }
    max_total = std::max(max_total, worst);
    shapes.push_back(std::move(s));
  }

  std::vector<Elem> values(rows_);
  std::vector<std::string> hits;
  std::vector<std::pair<std::vector<Elem>, Candidate>> hit_data;
  std::uint64_t work = 0;
  bool out_of_budget = false;
  auto try_tuple = [&](const Shape& s, const std::vector<std::size_t>& args) {
    bool has_delta = s.arity == 0;
    for (auto a : args) has_delta = has_delta || a >= delta;
    if (!has_delta) return;
    const auto& table = lattice_->connectives()[s.table].table;
    std::size_t r = 0;
    for (; r < rows_; ++r) {
      std::size_t idx = 0;
      for (auto a : args) idx = idx * n + result_.columns[a].values[r];
      values[r] = table[idx];
      if (!row_ok(r, values[r])) break;
    }
    work += r + 1;
    if (r < rows_) return;
    if (index_.count(key_of(values))) return;
    Candidate c{s.table, args, text_of(s.table, args)};
    hit_data.emplace_back(values, std::move(c));
  };

  for (std::size_t total = 0; total <= max_total && hit_data.empty(); ++total) {
    for (const auto& s : shapes) {
      if (total < s.overhead) continue;
      const std::size_t rest = total - s.overhead;
      if (s.arity == 0) {
        if (rest == 0) try_tuple(s, {});
      } else if (s.arity == 1) {
        auto it = s.groups[0].find(rest);
        if (it != s.groups[0].end())
          for (auto c : it->second) try_tuple(s, {c});
      } else if (s.arity == 2) {
        for (const auto& [l0, cols0] : s.groups[0]) {
          if (l0 > rest) break;
          auto it = s.groups[1].find(rest - l0);
          if (it == s.groups[1].end()) continue;
          for (auto c0 : cols0)
            for (auto c1 : it->second) try_tuple(s, {c0, c1});
        }
      } else {
        for_each_tuple(s.arity, size, delta, [&](const std::vector<std::size_t>& args) {
          if (text_length(s.table, args) == total) try_tuple(s, args);
          return true;
        });
      }
      if (result_.work + work > options_.max_work) {
        out_of_budget = true;
        break;
      }
    }
    if (out_of_budget) break;
  }
  result_.work += work;
  if (!hit_data.empty()) {
    auto best = std::min_element(hit_data.begin(), hit_data.end(),
                                 [](const auto& a, const auto& b) { return a.second.text < b.second.text; });
    probe.status = ProbeStatus::Hit;
    probe.values = best->first;
    probe.witness = formula_of(best->second);
    return probe;
  }
  if (out_of_budget) {
    result_.budget_hit = "max_work";
    probe.status = ProbeStatus::Budget;
  }
  return probe;
}

ClosureResult representable_closure(const Lattice& lattice, const std::vector<std::string>& vars,
                                    const ClosureOptions& options) {
  ClosureDriver driver(lattice, vars, options);
  while (driver.step()) {
  }
  return driver.take();
}

std::vector<Elem> constant_values(const Lattice& lattice) {
  auto closure = representable_closure(lattice, {});
  std::vector<Elem> out;
  for (const auto& c : closure.columns) out.push_back(c.values[0]);
  std::sort(out.begin(), out.end());
  return out;
}

Envelopes envelopes(const Formula& a, const Formula& b, const Lattice& lattice, const EnvelopeOptions& options) {
  Envelopes env;
  const auto av = prop_variables(a);
  const auto bv = prop_variables(b);
  for (const auto& v : av) {
    if (std::find(bv.begin(), bv.end(), v) != bv.end()) env.shared.push_back(v);
    else env.left.push_back(v);
  }
  for (const auto& v : bv)
    if (std::find(av.begin(), av.end(), v) == av.end()) env.right.push_back(v);
  const std::size_t m = lattice.size();
  const std::uint64_t outer_rows = valuation_count(m, env.shared.size());
  const std::uint64_t inner_rows = valuation_count(m, env.left.size()) + valuation_count(m, env.right.size());
  if (outer_rows * inner_rows > options.max_rows)
    throw Error(ErrorCode::BudgetExceeded, "envelope computation needs " + std::to_string(outer_rows * inner_rows) +
                                               " evaluations");

  auto envelope = [&](const Formula& f, const std::vector<std::string>& inner_vars, bool join) {
    std::vector<std::string> vars = env.shared;
    vars.insert(vars.end(), inner_vars.begin(), inner_vars.end());
    CompiledFormula cf(f, lattice, vars);
    std::vector<std::size_t> inner;
    for (std::size_t k = 0; k < inner_vars.size(); ++k) inner.push_back(env.shared.size() + k);
    std::vector<Elem> out(outer_rows), block, outer(vars.size(), 0);
    for (std::uint64_t s = 0; s < outer_rows; ++s) {
      auto sv = valuation_at(s, m, env.shared.size());
      std::copy(sv.begin(), sv.end(), outer.begin());
      cf.eval_block(outer, inner, block);
      Elem acc = join ? lattice.bottom() : lattice.top();
      for (Elem v : block) acc = join ? lattice.join(acc, v) : lattice.meet(acc, v);
      out[s] = acc;
    }
    return out;
  };
  env.lower = envelope(a, env.left, true);
  env.upper = envelope(b, env.right, false);
  for (std::uint64_t s = 0; s < outer_rows; ++s) {
    if (!lattice.leq(env.lower[s], env.upper[s])) {
      Valuation w{env.shared, valuation_at(s, m, env.shared.size())};
      throw Error(ErrorCode::NotValid, "a -> b is not valid",
                  {render_valuation(w, lattice), "lower=" + lattice.name(env.lower[s]),
                   "upper=" + lattice.name(env.upper[s])});
    }
  }
  return env;
}

std::string render_valuation(const Valuation& v, const Lattice& lattice) {
  std::string s;
  for (std::size_t i = 0; i < v.vars.size(); ++i) {
    if (i) s += ", ";
    s += v.vars[i] + "=" + lattice.name(v.values[i]);
  }
  return s;
}

}  // namespace fvl
