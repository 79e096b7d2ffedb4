#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace fvl {

// Lattice elements are indices into the declared element list.
using Elem = std::uint8_t;

enum class Polarity : signed char { Negative = -1, Positive = 1 };

inline Polarity operator*(Polarity a, Polarity b) {
  return a == b ? Polarity::Positive : Polarity::Negative;
}
char polarity_char(Polarity p);

// Reserved connective names for the mandatory lattice-oriented connectives.
inline constexpr std::string_view kJoin = "|";
inline constexpr std::string_view kMeet = "&";
inline constexpr std::string_view kImplies = "->";

struct ConnectiveDecl {
  std::string name;
  std::vector<Polarity> polarity;

  std::size_t arity() const { return polarity.size(); }
  bool is_infix() const { return name == kJoin || name == kMeet || name == kImplies; }
};

class PolaritySignature {
public:
  PolaritySignature() = default;
  explicit PolaritySignature(std::vector<ConnectiveDecl> connectives);

  const std::vector<ConnectiveDecl>& connectives() const { return connectives_; }
  const ConnectiveDecl* find(std::string_view name) const;
  std::optional<std::size_t> index_of(std::string_view name) const;

private:
  std::vector<ConnectiveDecl> connectives_;
};

struct Constant {
  std::string name;
  Elem value;
};

// A connective interpretation: a total table over element-index tuples in
// lexicographic order (first argument most significant).
struct ConnectiveTable {
  ConnectiveDecl decl;
  std::vector<Elem> table;

  Elem apply(std::span<const Elem> args, std::size_t lattice_size) const;
};

// Raw, unvalidated lattice description as read from a lattice file or built
// programmatically. Either `order` or both `meet` and `join` must be given.
struct LatticeDescription {
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> order;  // pairs lo <= hi
  std::vector<std::vector<std::string>> meet;
  std::vector<std::vector<std::string>> join;
  struct RawConnective {
    std::string name;
    std::string polarity;  // one of '+' / '-' per argument
    std::vector<std::string> values;  // flattened table in lexicographic tuple order
  };
  std::vector<RawConnective> connectives;
  std::vector<std::pair<std::string, std::string>> constants;  // name -> element
};

// A finite L->-lattice. Instances only come out of validate_lattice (or
// builders that call it), so every invariant holds for the lifetime of the
// object. Immutable.
class Lattice {
public:
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(Elem e) const { return names_[e]; }
  std::optional<Elem> find(std::string_view name) const;

  bool leq(Elem a, Elem b) const { return meet(a, b) == a; }
  Elem meet(Elem a, Elem b) const { return meet_[a * size() + b]; }
  Elem join(Elem a, Elem b) const { return join_[a * size() + b]; }
  Elem implies(Elem a, Elem b) const { return connectives_[implies_index_].table[a * size() + b]; }
  Elem top() const { return top_; }
  Elem bottom() const { return bottom_; }

  const PolaritySignature& signature() const { return signature_; }
  // Tables for every signature connective, including | and & (join, meet).
  const std::vector<ConnectiveTable>& connectives() const { return connectives_; }
  const ConnectiveTable* connective(std::string_view name) const;

  const std::vector<Constant>& constants() const { return constants_; }
  std::optional<Elem> constant(std::string_view name) const;

  // Same algebra, constant set replaced.
  Lattice with_constants(std::vector<Constant> constants) const;

  // Round-trips through parse_lattice_text + validate_lattice.
  std::string to_text() const;
  LatticeDescription describe() const;

  friend Lattice validate_lattice(const LatticeDescription& raw);

private:
  Lattice() = default;

  std::vector<std::string> names_;
  std::vector<Elem> meet_;
  std::vector<Elem> join_;
  std::vector<ConnectiveTable> connectives_;
  PolaritySignature signature_;
  std::vector<Constant> constants_;
  std::size_t implies_index_ = 0;
  Elem top_ = 0;
  Elem bottom_ = 0;
};

// Checks lattice axioms, polarity (monotone/antitone per declared sign) and
// the implication law 1 <= a -> b iff a <= b, exhaustively. Throws fvl::Error
// with the failed axiom and a witnessing tuple.
Lattice validate_lattice(const LatticeDescription& raw);

class KripkeFrame {
public:
  // `order` lists pairs (u, v) meaning u <= v; the reflexive-transitive
  // closure is taken and antisymmetry is checked.
  KripkeFrame(std::vector<std::string> worlds, const std::vector<std::pair<std::string, std::string>>& order);

  std::size_t size() const { return worlds_.size(); }
  const std::vector<std::string>& worlds() const { return worlds_; }
  bool leq(std::size_t u, std::size_t v) const { return order_[u * size() + v]; }

private:
  std::vector<std::string> worlds_;
  std::vector<bool> order_;
};

enum class ImplicationMode { Heyting, PaperTable };

// Lattice of upward-closed world sets ordered by inclusion. Heyting mode uses
// the relative pseudo-complement; PaperTable uses "1 if u <= v else v".
Lattice upset_lattice(const KripkeFrame& frame, ImplicationMode mode);

struct MonoidTable {
  std::vector<Elem> table;  // x & y at x * |L| + y
};

struct ResiduumCase {
  Elem candidate;
  std::string contradiction;  // empty when no local contradiction was found
};

struct NotResiduated {
  Elem x;
  Elem y;
  std::string law;     // which check failed first
  std::string detail;  // human-readable description of the failure
  std::vector<ResiduumCase> cases;  // every possible value of x & y, refuted
};

using ResiduumResult = std::variant<MonoidTable, NotResiduated>;

// Computes the only possible residuation candidate x & y = min{z | x <= y -> z}
// and checks it is a commutative monoid with unit 1 residuated by ->.
ResiduumResult derive_residuum(const Lattice& lattice);

}  // namespace fvl
