#include "fvl/algebra.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "fvl/error.hpp"
#include "fvl/lattice_text.hpp"

namespace fvl {

char polarity_char(Polarity p) { return p == Polarity::Positive ? '+' : '-'; }

PolaritySignature::PolaritySignature(std::vector<ConnectiveDecl> connectives)
    : connectives_(std::move(connectives)) {}

const ConnectiveDecl* PolaritySignature::find(std::string_view name) const {
  for (const auto& c : connectives_)
    if (c.name == name) return &c;
  return nullptr;
}

std::optional<std::size_t> PolaritySignature::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < connectives_.size(); ++i)
    if (connectives_[i].name == name) return i;
  return std::nullopt;
}

Elem ConnectiveTable::apply(std::span<const Elem> args, std::size_t lattice_size) const {
  std::size_t index = 0;
  for (Elem a : args) index = index * lattice_size + a;
  return table[index];
}

std::optional<Elem> Lattice::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<Elem>(i);
  return std::nullopt;
}

const ConnectiveTable* Lattice::connective(std::string_view name) const {
  for (const auto& c : connectives_)
    if (c.decl.name == name) return &c;
  return nullptr;
}

std::optional<Elem> Lattice::constant(std::string_view name) const {
  for (const auto& c : constants_)
    if (c.name == name) return c.value;
  return std::nullopt;
}

Lattice Lattice::with_constants(std::vector<Constant> constants) const {
  std::set<std::string> seen;
  for (const auto& c : constants) {
    if (!seen.insert(c.name).second)
      throw Error(ErrorCode::ParseError, "duplicate constant '" + c.name + "'");
    if (c.value >= size()) throw Error(ErrorCode::ParseError, "constant '" + c.name + "' out of range");
  }
  Lattice copy = *this;
  copy.constants_ = std::move(constants);
  return copy;
}

LatticeDescription Lattice::describe() const {
  LatticeDescription d;
  d.elements = names_;
  const std::size_t n = size();
  // Covering pairs are enough; validate_lattice takes the closure.
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || !leq(a, b)) continue;
      bool covers = true;
      for (std::size_t c = 0; c < n && covers; ++c)
        if (c != a && c != b && leq(a, c) && leq(c, b)) covers = false;
      if (covers) d.order.emplace_back(names_[a], names_[b]);
    }
  }
  for (const auto& c : connectives_) {
    if (c.decl.name == kJoin || c.decl.name == kMeet) continue;
    LatticeDescription::RawConnective raw;
    raw.name = c.decl.name;
    for (Polarity p : c.decl.polarity) raw.polarity.push_back(polarity_char(p));
    for (Elem v : c.table) raw.values.push_back(names_[v]);
    d.connectives.push_back(std::move(raw));
  }
  for (const auto& c : constants_) d.constants.emplace_back(c.name, names_[c.value]);
  return d;
}

std::string Lattice::to_text() const { return render_lattice_text(describe()); }

namespace {

bool is_name_token(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char ch) { return std::isalnum(ch) || ch == '_'; });
}

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

// Decodes a flat table index into its argument tuple.
std::vector<Elem> decode(std::size_t index, std::size_t arity, std::size_t n) {
  std::vector<Elem> args(arity);
  for (std::size_t i = arity; i-- > 0;) {
    args[i] = static_cast<Elem>(index % n);
    index /= n;
  }
  return args;
}

std::string tuple_text(const std::vector<std::string>& names, std::span<const Elem> args) {
  std::string s = "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) s += ",";
    s += names[args[i]];
  }
  return s + ")";
}

class Builder {
public:
  explicit Builder(const LatticeDescription& raw) : raw_(raw), n_(raw.elements.size()) {}

  Elem resolve(const std::string& name, std::string_view where) const {
    for (std::size_t i = 0; i < n_; ++i)
      if (raw_.elements[i] == name) return static_cast<Elem>(i);
    throw Error(ErrorCode::ParseError, "unknown element '" + name + "' in " + std::string(where));
  }

  std::vector<Elem> table_from_rows(const std::vector<std::vector<std::string>>& rows, std::string_view what) const {
    if (rows.size() != n_) throw Error(ErrorCode::ParseError, std::string(what) + " table must have one row per element");
    std::vector<Elem> out;
    out.reserve(n_ * n_);
    for (const auto& row : rows) {
      if (row.size() != n_) throw Error(ErrorCode::ParseError, std::string(what) + " table row has wrong length");
      for (const auto& v : row) out.push_back(resolve(v, what));
    }
    return out;
  }

  void tables_from_order(std::vector<Elem>& meet, std::vector<Elem>& join) const {
    std::vector<bool> le(n_ * n_, false);
    for (std::size_t i = 0; i < n_; ++i) le[i * n_ + i] = true;
    for (const auto& [lo, hi] : raw_.order) le[resolve(lo, "order") * n_ + resolve(hi, "order")] = true;
    for (std::size_t k = 0; k < n_; ++k)
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
          if (le[i * n_ + k] && le[k * n_ + j]) le[i * n_ + j] = true;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if (le[i * n_ + j] && le[j * n_ + i])
          throw Error(ErrorCode::LatticeAxiomViolation, "order is not antisymmetric",
                      {raw_.elements[i], raw_.elements[j]});
    meet.assign(n_ * n_, 0);
    join.assign(n_ * n_, 0);
    for (std::size_t a = 0; a < n_; ++a) {
      for (std::size_t b = 0; b < n_; ++b) {
        auto bound = [&](bool lower) -> std::optional<Elem> {
          std::optional<Elem> best;
          for (std::size_t c = 0; c < n_; ++c) {
            bool is_bound = lower ? (le[c * n_ + a] && le[c * n_ + b]) : (le[a * n_ + c] && le[b * n_ + c]);
            if (!is_bound) continue;
            bool extreme = true;
            for (std::size_t d = 0; d < n_ && extreme; ++d) {
              bool other = lower ? (le[d * n_ + a] && le[d * n_ + b]) : (le[a * n_ + d] && le[b * n_ + d]);
              if (other && !(lower ? le[d * n_ + c] : le[c * n_ + d])) extreme = false;
            }
            if (extreme) best = static_cast<Elem>(c);
          }
          return best;
        };
        auto glb = bound(true);
        auto lub = bound(false);
        if (!glb || !lub)
          throw Error(ErrorCode::LatticeAxiomViolation,
                      std::string("order has no ") + (glb ? "least upper" : "greatest lower") + " bound for pair",
                      {raw_.elements[a], raw_.elements[b]});
        meet[a * n_ + b] = *glb;
        join[a * n_ + b] = *lub;
      }
    }
  }

private:
  const LatticeDescription& raw_;
  std::size_t n_;
};

void check_lattice_axioms(const std::vector<std::string>& names, const std::vector<Elem>& meet,
                          const std::vector<Elem>& join) {
  const std::size_t n = names.size();
  auto m = [&](std::size_t a, std::size_t b) { return meet[a * n + b]; };
  auto j = [&](std::size_t a, std::size_t b) { return join[a * n + b]; };
  auto fail = [&](const std::string& axiom, std::initializer_list<std::size_t> tuple) {
    std::vector<std::string> w;
    for (auto t : tuple) w.push_back(names[t]);
    throw Error(ErrorCode::LatticeAxiomViolation, axiom, w);
  };
  for (std::size_t a = 0; a < n; ++a) {
    if (m(a, a) != a) fail("meet idempotence", {a});
    if (j(a, a) != a) fail("join idempotence", {a});
    for (std::size_t b = 0; b < n; ++b) {
      if (m(a, b) != m(b, a)) fail("meet commutativity", {a, b});
      if (j(a, b) != j(b, a)) fail("join commutativity", {a, b});
      if (m(a, j(a, b)) != a) fail("absorption a & (a | b) = a", {a, b});
      if (j(a, m(a, b)) != a) fail("absorption a | (a & b) = a", {a, b});
      for (std::size_t c = 0; c < n; ++c) {
        if (m(a, m(b, c)) != m(m(a, b), c)) fail("meet associativity", {a, b, c});
        if (j(a, j(b, c)) != j(j(a, b), c)) fail("join associativity", {a, b, c});
      }
    }
  }
}

}  // namespace

Lattice validate_lattice(const LatticeDescription& raw) {
  const std::size_t n = raw.elements.size();
  if (n == 0) throw Error(ErrorCode::ParseError, "lattice has no elements");
  if (n > 255) throw Error(ErrorCode::ParseError, "lattice has more than 255 elements");
  {
    std::set<std::string> seen;
    for (const auto& e : raw.elements) {
      if (!is_name_token(e)) throw Error(ErrorCode::ParseError, "element name '" + e + "' is not a name token");
      if (!seen.insert(e).second) throw Error(ErrorCode::ParseError, "duplicate element '" + e + "'");
    }
  }
  Builder builder(raw);

  Lattice lat;
  lat.names_ = raw.elements;
  if (!raw.meet.empty() || !raw.join.empty()) {
    if (raw.meet.empty() || raw.join.empty())
      throw Error(ErrorCode::ParseError, "meet and join tables must be given together");
    lat.meet_ = builder.table_from_rows(raw.meet, "meet");
    lat.join_ = builder.table_from_rows(raw.join, "join");
  } else {
    builder.tables_from_order(lat.meet_, lat.join_);
  }
  check_lattice_axioms(lat.names_, lat.meet_, lat.join_);

  // Derived order; lattice axioms make it a partial order, so only the
  // extremal elements need discovering.
  std::vector<std::size_t> tops, bottoms;
  for (std::size_t t = 0; t < n; ++t) {
    bool is_top = true, is_bottom = true;
    for (std::size_t x = 0; x < n; ++x) {
      if (lat.meet_[x * n + t] != x) is_top = false;
      if (lat.meet_[t * n + x] != t) is_bottom = false;
    }
    if (is_top) tops.push_back(t);
    if (is_bottom) bottoms.push_back(t);
  }
  if (tops.size() != 1) throw Error(ErrorCode::LatticeAxiomViolation, "order has no unique greatest element");
  lat.top_ = static_cast<Elem>(tops.front());
  lat.bottom_ = static_cast<Elem>(bottoms.front());

  std::vector<ConnectiveDecl> decls;
  decls.push_back({std::string(kJoin), {Polarity::Positive, Polarity::Positive}});
  decls.push_back({std::string(kMeet), {Polarity::Positive, Polarity::Positive}});
  lat.connectives_.push_back({decls[0], lat.join_});
  lat.connectives_.push_back({decls[1], lat.meet_});

  std::set<std::string> connective_names{std::string(kJoin), std::string(kMeet)};
  bool has_implies = false;
  for (const auto& rc : raw.connectives) {
    if (!connective_names.insert(rc.name).second)
      throw Error(ErrorCode::ParseError, "duplicate connective '" + rc.name + "'");
    ConnectiveDecl decl{rc.name, {}};
    for (char ch : rc.polarity) {
      if (ch == '+') decl.polarity.push_back(Polarity::Positive);
      else if (ch == '-') decl.polarity.push_back(Polarity::Negative);
      else throw Error(ErrorCode::ParseError, "bad polarity character in connective '" + rc.name + "'");
    }
    if (rc.name == kImplies) {
      if (decl.polarity != std::vector<Polarity>{Polarity::Negative, Polarity::Positive})
        throw Error(ErrorCode::MissingMandatoryConnective, "connective -> must be binary with polarity -+");
      has_implies = true;
      lat.implies_index_ = lat.connectives_.size();
    }
    const std::size_t expected = ipow(n, decl.arity());
    if (rc.values.size() != expected)
      throw Error(ErrorCode::ParseError, "connective '" + rc.name + "' table has " + std::to_string(rc.values.size()) +
                                             " entries, expected " + std::to_string(expected));
    ConnectiveTable table{decl, {}};
    table.table.reserve(expected);
    for (const auto& v : rc.values) table.table.push_back(builder.resolve(v, "connective " + rc.name));
    decls.push_back(decl);
    lat.connectives_.push_back(std::move(table));
  }
  if (!has_implies) throw Error(ErrorCode::MissingMandatoryConnective, "connective -> is not declared");
  lat.signature_ = PolaritySignature(decls);

  // Polarity: for every position and every comparable pair a < b there.
  for (const auto& ct : lat.connectives_) {
    const std::size_t arity = ct.decl.arity();
    const std::size_t count = ct.table.size();
    for (std::size_t index = 0; index < count; ++index) {
      std::vector<Elem> args = decode(index, arity, n);
      for (std::size_t pos = 0; pos < arity; ++pos) {
        const Elem a = args[pos];
        for (std::size_t b = 0; b < n; ++b) {
          if (b == a || !lat.leq(a, static_cast<Elem>(b))) continue;
          std::vector<Elem> other = args;
          other[pos] = static_cast<Elem>(b);
          const Elem va = ct.table[index];
          const Elem vb = ct.apply(other, n);
          const bool ok = ct.decl.polarity[pos] == Polarity::Positive ? lat.leq(va, vb) : lat.leq(vb, va);
          if (!ok) {
            throw Error(ErrorCode::PolarityViolation,
                        "connective '" + ct.decl.name + "' is not " +
                            (ct.decl.polarity[pos] == Polarity::Positive ? "monotone" : "antitone") +
                            " in argument " + std::to_string(pos + 1),
                        {tuple_text(lat.names_, args), tuple_text(lat.names_, other)});
          }
        }
      }
    }
  }

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const bool lhs = lat.leq(lat.top_, lat.implies(static_cast<Elem>(a), static_cast<Elem>(b)));
      const bool rhs = lat.leq(static_cast<Elem>(a), static_cast<Elem>(b));
      if (lhs != rhs)
        throw Error(ErrorCode::ImplicationLawViolation, "1 <= A -> B must hold exactly when A <= B",
                    {lat.names_[a], lat.names_[b]});
    }
  }

  std::set<std::string> constant_names;
  for (const auto& [name, value] : raw.constants) {
    if (!is_name_token(name)) throw Error(ErrorCode::ParseError, "constant name '" + name + "' is not a name token");
    if (!constant_names.insert(name).second) throw Error(ErrorCode::ParseError, "duplicate constant '" + name + "'");
    lat.constants_.push_back({name, builder.resolve(value, "constant " + name)});
  }
  return lat;
}

KripkeFrame::KripkeFrame(std::vector<std::string> worlds, const std::vector<std::pair<std::string, std::string>>& order)
    : worlds_(std::move(worlds)) {
  const std::size_t n = worlds_.size();
  if (n == 0) throw Error(ErrorCode::FrameNotPartialOrder, "frame has no worlds");
  if (n > 16) throw Error(ErrorCode::BudgetExceeded, "frames are limited to 16 worlds");
  std::set<std::string> seen;
  for (const auto& w : worlds_)
    if (!seen.insert(w).second) throw Error(ErrorCode::ParseError, "duplicate world '" + w + "'");
  auto index = [&](const std::string& w) {
    for (std::size_t i = 0; i < n; ++i)
      if (worlds_[i] == w) return i;
    throw Error(ErrorCode::ParseError, "unknown world '" + w + "'");
  };
  order_.assign(n * n, false);
  for (std::size_t i = 0; i < n; ++i) order_[i * n + i] = true;
  for (const auto& [u, v] : order) order_[index(u) * n + index(v)] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (order_[i * n + k] && order_[k * n + j]) order_[i * n + j] = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (order_[i * n + j] && order_[j * n + i])
        throw Error(ErrorCode::FrameNotPartialOrder, "world order is not antisymmetric", {worlds_[i], worlds_[j]});
}

Lattice upset_lattice(const KripkeFrame& frame, ImplicationMode mode) {
  const std::size_t w = frame.size();
  const std::uint32_t full = (1u << w) - 1;
  std::vector<std::uint32_t> upsets;
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    bool closed = true;
    for (std::size_t u = 0; u < w && closed; ++u) {
      if (!(mask >> u & 1u)) continue;
      for (std::size_t v = 0; v < w; ++v)
        if (frame.leq(u, v) && !(mask >> v & 1u)) {
          closed = false;
          break;
        }
    }
    if (closed) upsets.push_back(mask);
  }
  std::sort(upsets.begin(), upsets.end(), [](std::uint32_t a, std::uint32_t b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });

  const bool short_names = std::all_of(frame.worlds().begin(), frame.worlds().end(),
                                       [](const std::string& s) { return s.size() == 1; });
  LatticeDescription d;
  for (std::uint32_t mask : upsets) {
    if (mask == 0) {
      d.elements.push_back("0");
    } else if (mask == full) {
      d.elements.push_back("1");
    } else {
      std::string name;
      for (std::size_t u = 0; u < w; ++u) {
        if (!(mask >> u & 1u)) continue;
        if (!name.empty() && !short_names) name += "_";
        name += frame.worlds()[u];
      }
      d.elements.push_back(name);
    }
  }
  const std::size_t n = upsets.size();
  auto name_of = [&](std::uint32_t mask) {
    return d.elements[std::find(upsets.begin(), upsets.end(), mask) - upsets.begin()];
  };
  d.meet.assign(n, {});
  d.join.assign(n, {});
  LatticeDescription::RawConnective imp{std::string(kImplies), "-+", {}};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::uint32_t u = upsets[i], v = upsets[j];
      d.meet[i].push_back(name_of(u & v));
      d.join[i].push_back(name_of(u | v));
      std::uint32_t r = 0;
      if (mode == ImplicationMode::Heyting) {
        for (std::size_t x = 0; x < w; ++x) {
          bool ok = true;
          for (std::size_t y = 0; y < w && ok; ++y)
            if (frame.leq(x, y) && (u >> y & 1u) && !(v >> y & 1u)) ok = false;
          if (ok) r |= 1u << x;
        }
      } else {
        r = (u & ~v) == 0 ? full : v;
      }
      imp.values.push_back(name_of(r));
    }
  }
  d.connectives.push_back(std::move(imp));
  return validate_lattice(d);
}

ResiduumResult derive_residuum(const Lattice& lat) {
  const std::size_t n = lat.size();
  const Elem top = lat.top();
  auto el = [](std::size_t i) { return static_cast<Elem>(i); };
  auto nm = [&](Elem e) { return lat.name(e); };

  // Local case analysis: why can x & y (and y & x, by commutativity) not be z?
  auto analyse = [&](Elem x, Elem y) {
    std::vector<ResiduumCase> cases;
    for (std::size_t zi = 0; zi < n; ++zi) {
      const Elem z = el(zi);
      std::string why;
      if (y == top && z != x) why = "unit law requires " + nm(x) + " & 1 = " + nm(x);
      if (why.empty() && x == top && z != y) why = "unit law requires 1 & " + nm(y) + " = " + nm(y);
      for (int orient = 0; orient < 2 && why.empty(); ++orient) {
        const Elem a = orient == 0 ? x : y;
        const Elem b = orient == 0 ? y : x;
        for (std::size_t wi = 0; wi < n && why.empty(); ++wi) {
          const Elem w = el(wi);
          const bool lhs = lat.leq(z, w);
          const bool rhs = lat.leq(a, lat.implies(b, w));
          if (lhs != rhs) {
            std::ostringstream s;
            s << nm(a) << " & " << nm(b) << " = " << nm(z) << " => (" << nm(z) << " <= " << nm(w) << ") is "
              << (lhs ? "true" : "false") << " but " << nm(a) << " <= " << nm(b) << " -> " << nm(w) << " = "
              << nm(lat.implies(b, w)) << " is " << (rhs ? "true" : "false");
            why = s.str();
          }
        }
      }
      cases.push_back({z, why});
    }
    return cases;
  };
  auto failure = [&](Elem x, Elem y, std::string law, std::string detail) -> ResiduumResult {
    return NotResiduated{x, y, std::move(law), std::move(detail), analyse(x, y)};
  };

  MonoidTable result;
  result.table.assign(n * n, 0);
  for (std::size_t xi = 0; xi < n; ++xi) {
    for (std::size_t yi = 0; yi < n; ++yi) {
      const Elem x = el(xi), y = el(yi);
      std::optional<Elem> least;
      for (std::size_t zi = 0; zi < n; ++zi) {
        const Elem z = el(zi);
        if (!lat.leq(x, lat.implies(y, z))) continue;
        bool below_all = true;
        for (std::size_t wi = 0; wi < n && below_all; ++wi)
          if (lat.leq(x, lat.implies(y, el(wi))) && !lat.leq(z, el(wi))) below_all = false;
        if (below_all) least = z;
      }
      if (!least)
        return failure(x, y, "least candidate",
                       "no least z with " + nm(x) + " <= " + nm(y) + " -> z");
      result.table[xi * n + yi] = *least;
    }
  }
  auto t = [&](std::size_t a, std::size_t b) { return result.table[a * n + b]; };
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      if (t(x, y) != t(y, x))
        return failure(el(x), el(y), "commutativity",
                       nm(el(x)) + " & " + nm(el(y)) + " = " + nm(t(x, y)) + " but " + nm(el(y)) + " & " + nm(el(x)) +
                           " = " + nm(t(y, x)));
  for (std::size_t x = 0; x < n; ++x)
    if (t(top, x) != x || t(x, top) != x)
      return failure(top, el(x), "unit", "1 is not a unit for " + nm(el(x)));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (t(x, t(y, z)) != t(t(x, y), z))
          return failure(el(x), el(y), "associativity",
                         "(" + nm(el(x)) + " & " + nm(el(y)) + ") & " + nm(el(z)) + " differs from " + nm(el(x)) +
                             " & (" + nm(el(y)) + " & " + nm(el(z)) + ")");
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (lat.leq(t(x, y), el(z)) != lat.leq(el(x), lat.implies(el(y), el(z))))
          return failure(el(x), el(y), "residuation", "x & y <= z iff x <= y -> z fails at z = " + nm(el(z)));
  return result;
}

}  // namespace fvl
