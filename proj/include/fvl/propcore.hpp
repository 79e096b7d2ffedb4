#pragma once

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fvl/algebra.hpp"
#include "fvl/formula.hpp"

namespace fvl {

struct Valuation {
  std::vector<std::string> vars;
  std::vector<Elem> values;

  std::optional<Elem> get(std::string_view var) const;
};

// Number of valuations |L|^n; throws BUDGET_EXCEEDED past 2^40.
std::uint64_t valuation_count(std::size_t lattice_size, std::size_t vars);
// Valuation number `index` in lexicographic order (last variable fastest).
std::vector<Elem> valuation_at(std::uint64_t index, std::size_t lattice_size, std::size_t vars);

// A formula compiled against a lattice and a fixed variable list.
class CompiledFormula {
public:
  // Throws UNDECLARED_CONSTANT, UNBOUND_VARIABLE, NOT_PROPOSITIONAL, UNKNOWN_SYMBOL.
  CompiledFormula(const Formula& f, const Lattice& lattice, std::vector<std::string> vars);

  const std::vector<std::string>& vars() const { return vars_; }
  Elem eval(std::span<const Elem> values) const;
  // Values over all valuations of vars(), in lexicographic order.
  std::vector<Elem> column() const;
  // Values over the valuations of the variables in `inner` (indices into
  // vars(), lexicographic), the others fixed to `outer`.
  void eval_block(std::span<const Elem> outer, std::span<const std::size_t> inner, std::vector<Elem>& out) const;
  // Lower/upper bound of the value when only variables with assigned[i] != 0
  // are fixed; sound by polarity.
  std::pair<Elem, Elem> bounds(std::span<const Elem> values, std::span<const std::uint8_t> assigned) const;

private:
  struct Op {
    enum Kind : std::uint8_t { Var, Const, Apply } kind;
    std::uint32_t index;          // variable index, constant value, or table index
    std::vector<std::uint32_t> args;  // operand op indices
  };
  const Lattice* lattice_;
  std::vector<std::string> vars_;
  std::vector<Op> ops_;  // topological, root last
};

Elem eval_prop(const Formula& f, const Lattice& lattice, const Valuation& v);

struct ValidityOptions {
  std::size_t var_cap = 10;
  // Decision order for the search; defaults to shared variables first when
  // the formula is an implication, first occurrence otherwise.
  std::optional<std::vector<std::string>> order;
};

struct ValidityResult {
  bool valid = true;
  std::optional<Valuation> countervaluation;
  std::uint64_t nodes = 0;  // search nodes visited
};

// Exhaustive validity (value is the top element everywhere), with
// interval pruning that never changes the answer.
ValidityResult is_valid_prop(const Formula& f, const Lattice& lattice, const ValidityOptions& options = {});

struct ValueColumn {
  std::vector<std::string> vars;
  std::vector<Elem> values;
  Formula witness;
};

std::vector<Elem> column_of(const Formula& f, const Lattice& lattice, const std::vector<std::string>& vars);

struct ClosureOptions {
  std::optional<std::size_t> max_levels;  // unlimited by default
  std::size_t max_columns = 200000;
  std::uint64_t max_work = 4'000'000'000ULL;  // table lookups
  // Restrict to these connectives (by name); all lattice connectives if unset.
  std::optional<std::vector<std::string>> connectives;
};

struct ClosureResult {
  std::vector<std::string> vars;
  std::vector<ValueColumn> columns;     // closure order: level, then witness length, then text
  std::vector<std::size_t> level_of;    // level each column first appeared at
  std::vector<std::size_t> trace;       // cumulative column count after each productive level
  bool complete = false;
  std::string budget_hit;               // empty when complete
  std::uint64_t work = 0;

  std::optional<std::size_t> find(std::span<const Elem> values) const;
};

// Level 0: projections then declared constants. Each further level applies
// every connective to tuples of existing columns that use at least one column
// from the previous level.
ClosureResult representable_closure(const Lattice& lattice, const std::vector<std::string>& vars,
                                    const ClosureOptions& options = {});

// Level-by-level closure engine. representable_closure runs it to the end;
// interpolant search probes each level before building it.
class ClosureDriver {
public:
  ClosureDriver(const Lattice& lattice, std::vector<std::string> vars, ClosureOptions options = {});

  // Builds the next level. Returns false at fixpoint or when a budget is hit.
  bool step();

  enum class ProbeStatus { Hit, NoHit, Budget };
  struct Probe {
    ProbeStatus status = ProbeStatus::NoHit;
    std::vector<Elem> values;
    std::optional<Formula> witness;
  };
  // Looks for a column the next step would add whose every row passes
  // row_ok. Tuples are tried shortest rendering first; among hits of the
  // shortest length the lexicographically least wins, which is the hit
  // that comes first in closure order. The closure itself is unchanged.
  Probe probe_next_level(const std::function<bool(std::size_t row, Elem value)>& row_ok);

  const ClosureResult& result() const { return result_; }
  ClosureResult take() { return std::move(result_); }
  bool finished() const { return fixpoint_ || !result_.budget_hit.empty(); }
  std::size_t rows() const { return rows_; }

private:
  struct Candidate {
    std::size_t table;
    std::vector<std::size_t> args;
    std::string text;
  };
  std::size_t text_length(std::size_t table, std::span<const std::size_t> args) const;
  std::string text_of(std::size_t table, std::span<const std::size_t> args) const;
  Formula formula_of(const Candidate& c) const;
  void add_column(std::vector<Elem> values, Formula witness, std::string text, std::size_t level);
  bool charge(std::uint64_t work);

  const Lattice* lattice_;
  ClosureOptions options_;
  ClosureResult result_;
  std::size_t rows_ = 1;
  std::size_t delta_begin_ = 0;  // first column of the newest level
  std::size_t levels_done_ = 0;
  bool fixpoint_ = false;
  std::vector<std::string> texts_;
  std::vector<int> precedence_;
  std::vector<std::size_t> tables_;  // indices into lattice.connectives()
  std::unordered_map<std::string, std::size_t> index_;
};

// Values of closed words (the 0-variable closure).
std::vector<Elem> constant_values(const Lattice& lattice);

struct Envelopes {
  std::vector<std::string> shared;
  std::vector<std::string> left;   // variables only in a
  std::vector<std::string> right;  // variables only in b
  std::vector<Elem> lower;         // over shared valuations
  std::vector<Elem> upper;
};

struct EnvelopeOptions {
  std::uint64_t max_rows = 400'000'000ULL;
};

// Throws NOT_VALID (with a witnessing shared valuation) unless a -> b is valid.
Envelopes envelopes(const Formula& a, const Formula& b, const Lattice& lattice, const EnvelopeOptions& options = {});

std::string render_valuation(const Valuation& v, const Lattice& lattice);

}  // namespace fvl
