#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fvl/propcore.hpp"

namespace fvl {

enum class Verdict { Yes, No, Unknown };
std::string_view to_string(Verdict v);

struct InterpolationOptions {
  ClosureOptions closure;
  EnvelopeOptions envelope;
  std::size_t verify_var_cap = 24;
};

struct InterpolationVerdict {
  Verdict status = Verdict::Unknown;
  std::optional<Formula> interpolant;
  Envelopes envelopes;
  // Closure over the shared variables as far as it got.
  std::vector<std::size_t> trace;
  std::size_t columns_seen = 0;
  std::vector<ValueColumn> representable;  // filled for NO (the complete set)
  std::string budget_hit;
  std::uint64_t work = 0;
};

// Throws NOT_VALID when a -> b is not valid.
InterpolationVerdict find_prop_interpolant(const Formula& a, const Formula& b, const Lattice& lattice,
                                           const InterpolationOptions& options = {});

// Disjunction of a with its left variables replaced by constant words, over
// every tuple of values. Throws PRECONDITION_FAILED unless every element is
// the value of a closed word.
Formula constructive_interpolant_all_constants(const Formula& a, const Formula& b, const Lattice& lattice);

using VarSubstitution = std::map<std::string, std::string>;

// One substitution per partition of X into at most n classes; each variable
// maps to the first member of its class. Restricted-growth order.
std::vector<VarSubstitution> sigma_substitutions(const std::vector<std::string>& X, std::size_t n);
// The conjunction over X of (x sigma -> x) & (x -> x sigma).
Formula sigma_condition(const VarSubstitution& sigma, const std::vector<std::string>& X);
Formula merge_interpolants_sigma(const std::vector<std::pair<VarSubstitution, Formula>>& interpolants,
                                 const std::vector<std::string>& X);

struct DecideOptions {
  // Bounded mode caps left/right and shared variable counts at `bound`; a
  // bounded run never answers YES unless the bound reaches |L|.
  std::optional<std::size_t> bound;
  ClosureOptions closure{std::nullopt, 20000, 300'000'000ULL, std::nullopt};
  std::uint64_t max_pair_work = 200'000'000ULL;
};

struct DecisionReport {
  Verdict status = Verdict::Unknown;
  std::string reason;
  std::vector<Elem> constant_values;
  // NO: a valid a <= b with no interpolant.
  std::optional<Formula> witness_a;
  std::optional<Formula> witness_b;
  std::vector<Elem> gap_lower;  // envelopes of the witness pair
  std::vector<Elem> gap_upper;
  std::vector<std::string> gap_shared;
  // YES via the all-constants path: a sample pair and its interpolant.
  std::optional<Formula> sample_a;
  std::optional<Formula> sample_b;
  std::optional<Formula> sample_interpolant;
  std::vector<std::string> progress;
};

DecisionReport decide_interpolation(const Lattice& lattice, const DecideOptions& options = {});

struct SpectrumEntry {
  std::vector<Elem> subset;
  Verdict status;
  std::string reason;
};

struct SpectrumReport {
  std::vector<SpectrumEntry> entries;  // subsets by bitmask order
  std::vector<std::string> monotonicity_violations;
};

// Input constants are dropped; each subset is added as constants named after
// its elements.
SpectrumReport spectrum(const Lattice& lattice, const DecideOptions& options = {});

}  // namespace fvl
