#include "fvl/interp.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "fvl/error.hpp"
#include "fvl/syntax.hpp"

namespace fvl {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "YES";
    case Verdict::No: return "NO";
    case Verdict::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

namespace {

bool between(const Lattice& lat, std::span<const Elem> lower, std::span<const Elem> values, std::span<const Elem> upper) {
  for (std::size_t r = 0; r < values.size(); ++r)
    if (!lat.leq(lower[r], values[r]) || !lat.leq(values[r], upper[r])) return false;
  return true;
}

void verify_interpolant(const Formula& a, const Formula& i, const Formula& b, const Lattice& lattice,
                        std::size_t var_cap) {
  ValidityOptions vo;
  vo.var_cap = var_cap;
  if (!is_valid_prop(Formula::implies(a, i), lattice, vo).valid)
    throw Error(ErrorCode::SmokeTestFailed, "a -> i fails for interpolant " + render(i));
  if (!is_valid_prop(Formula::implies(i, b), lattice, vo).valid)
    throw Error(ErrorCode::SmokeTestFailed, "i -> b fails for interpolant " + render(i));
}

}  // namespace

InterpolationVerdict find_prop_interpolant(const Formula& a, const Formula& b, const Lattice& lattice,
                                           const InterpolationOptions& options) {
  InterpolationVerdict verdict;
  verdict.envelopes = envelopes(a, b, lattice, options.envelope);
  const auto& env = verdict.envelopes;
  ClosureDriver driver(lattice, env.shared, options.closure);
  auto finish = [&](Verdict status, std::optional<Formula> interpolant) {
    verdict.status = status;
    verdict.trace = driver.result().trace;
    verdict.columns_seen = driver.result().columns.size();
    verdict.budget_hit = driver.result().budget_hit;
    verdict.work = driver.result().work;
    if (interpolant) {
      verify_interpolant(a, *interpolant, b, lattice, options.verify_var_cap);
      verdict.interpolant = std::move(interpolant);
    }
    return verdict;
  };
  for (const auto& col : driver.result().columns)
    if (between(lattice, env.lower, col.values, env.upper)) return finish(Verdict::Yes, col.witness);
  const auto row_ok = [&](std::size_t r, Elem v) { return lattice.leq(env.lower[r], v) && lattice.leq(v, env.upper[r]); };
  while (true) {
    auto probe = driver.probe_next_level(row_ok);
    if (probe.status == ClosureDriver::ProbeStatus::Hit) return finish(Verdict::Yes, probe.witness);
    if (probe.status == ClosureDriver::ProbeStatus::Budget) return finish(Verdict::Unknown, std::nullopt);
    if (!driver.step()) break;
  }
  if (!driver.result().complete) return finish(Verdict::Unknown, std::nullopt);
  // Re-scan the complete set: nothing may lie between the envelopes.
  for (const auto& col : driver.result().columns)
    if (between(lattice, env.lower, col.values, env.upper))
      throw Error(ErrorCode::SmokeTestFailed, "closure scan missed " + render(col.witness));
  verdict.representable = driver.result().columns;
  return finish(Verdict::No, std::nullopt);
}

Formula constructive_interpolant_all_constants(const Formula& a, const Formula& b, const Lattice& lattice) {
  const auto closed = representable_closure(lattice, {});
  std::vector<std::optional<Formula>> word(lattice.size());
  for (const auto& col : closed.columns)
    if (!word[col.values[0]]) word[col.values[0]] = col.witness;
  for (std::size_t e = 0; e < lattice.size(); ++e)
    if (!word[e])
      throw Error(ErrorCode::PreconditionFailed, "element " + lattice.name(static_cast<Elem>(e)) +
                                                     " is not the value of a closed word");
  const Envelopes env = envelopes(a, b, lattice);
  if (env.left.empty()) return a;
  const std::size_t k = env.left.size();
  const std::uint64_t count = valuation_count(lattice.size(), k);
  std::vector<Formula> parts;
  for (std::uint64_t t = 0; t < count; ++t) {
    auto values = valuation_at(t, lattice.size(), k);
    std::map<std::string, Formula> mapping;
    for (std::size_t i = 0; i < k; ++i) mapping.emplace(env.left[i], *word[values[i]]);
    parts.push_back(substitute_prop(a, mapping));
  }
  Formula result = Formula::big_or(parts);
  verify_interpolant(a, result, b, lattice, 24);
  return result;
}

std::vector<VarSubstitution> sigma_substitutions(const std::vector<std::string>& X, std::size_t n) {
  std::vector<VarSubstitution> out;
  if (X.empty()) {
    out.emplace_back();
    return out;
  }
  std::vector<std::size_t> rgs(X.size(), 0);
  std::function<void(std::size_t, std::size_t)> go = [&](std::size_t pos, std::size_t blocks) {
    if (pos == X.size()) {
      VarSubstitution sigma;
      std::vector<std::string> rep(blocks);
      for (std::size_t i = 0; i < X.size(); ++i) {
        if (rep[rgs[i]].empty()) rep[rgs[i]] = X[i];
        sigma[X[i]] = rep[rgs[i]];
      }
      out.push_back(std::move(sigma));
      return;
    }
    for (std::size_t c = 0; c <= blocks && c < n; ++c) {
      rgs[pos] = c;
      go(pos + 1, std::max(blocks, c + 1));
    }
  };
  go(0, 0);
  return out;
}

Formula sigma_condition(const VarSubstitution& sigma, const std::vector<std::string>& X) {
  std::vector<Formula> parts;
  for (const auto& x : X) {
    auto it = sigma.find(x);
    const Formula xs = Formula::variable(it == sigma.end() ? x : it->second);
    const Formula xv = Formula::variable(x);
    parts.push_back(Formula::conj(Formula::implies(xs, xv), Formula::implies(xv, xs)));
  }
  if (parts.empty()) throw Error(ErrorCode::PreconditionFailed, "sigma condition over no variables");
  return Formula::big_and(parts);
}

Formula merge_interpolants_sigma(const std::vector<std::pair<VarSubstitution, Formula>>& interpolants,
                                 const std::vector<std::string>& X) {
  if (interpolants.empty()) throw Error(ErrorCode::PreconditionFailed, "no interpolants to merge");
  std::vector<Formula> parts;
  for (const auto& [sigma, i] : interpolants) parts.push_back(Formula::conj(i, sigma_condition(sigma, X)));
  return Formula::big_or(parts);
}

namespace {

std::vector<std::string> numbered(const char* prefix, std::size_t count) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= count; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

// Collapses each block of `block` consecutive rows with join or meet.
std::vector<Elem> fold_blocks(const Lattice& lat, const std::vector<Elem>& values, std::size_t block, bool join) {
  std::vector<Elem> out(values.size() / block);
  for (std::size_t g = 0; g < out.size(); ++g) {
    Elem acc = join ? lat.bottom() : lat.top();
    for (std::size_t r = 0; r < block; ++r) {
      const Elem v = values[g * block + r];
      acc = join ? lat.join(acc, v) : lat.meet(acc, v);
    }
    out[g] = acc;
  }
  return out;
}

}  // namespace

DecisionReport decide_interpolation(const Lattice& lattice, const DecideOptions& options) {
  DecisionReport report;
  const std::size_t n = lattice.size();
  report.constant_values = constant_values(lattice);
  const Formula x = Formula::variable("x");
  const Formula y = Formula::variable("y");
  const Formula z = Formula::variable("z");

  if (report.constant_values.empty()) {
    report.status = Verdict::No;
    report.reason = "no closed words denote a value, so x <= y -> y has no interpolant";
    report.witness_a = x;
    report.witness_b = Formula::implies(y, y);
    auto check = find_prop_interpolant(*report.witness_a, *report.witness_b, lattice);
    if (check.status != Verdict::No) throw Error(ErrorCode::SmokeTestFailed, "quick-path witness interpolates");
    report.gap_lower = check.envelopes.lower;
    report.gap_upper = check.envelopes.upper;
    return report;
  }
  if (report.constant_values.size() == n) {
    report.status = Verdict::Yes;
    report.reason = "every element is the value of a closed word";
    report.sample_a = Formula::conj(x, y);
    report.sample_b = Formula::disj(y, z);
    report.sample_interpolant = constructive_interpolant_all_constants(*report.sample_a, *report.sample_b, lattice);
    return report;
  }

  const std::size_t bound = options.bound.value_or(n);
  const std::size_t limit = std::min(bound, n);
  std::uint64_t pair_work = 0;
  for (std::size_t total = 1; total <= 2 * limit; ++total) {
    for (std::size_t s = 0; s <= limit; ++s) {
      if (total < s + 1 || total - s > limit) continue;
      const std::size_t k = total - s;
      const auto shared = numbered("y", s);
      auto vars = shared;
      const auto left = numbered("x", k);
      vars.insert(vars.end(), left.begin(), left.end());
      std::string step = "left/right " + std::to_string(k) + ", shared " + std::to_string(s) + ": ";
      const auto full = representable_closure(lattice, vars, options.closure);
      if (!full.complete) {
        report.status = Verdict::Unknown;
        report.reason = "closure over " + std::to_string(vars.size()) + " variables hit " + full.budget_hit;
        report.progress.push_back(step + "closure incomplete (" + full.budget_hit + ")");
        return report;
      }
      const auto inner = representable_closure(lattice, shared, options.closure);
      if (!inner.complete) {
        report.status = Verdict::Unknown;
        report.reason = "closure over " + std::to_string(s) + " shared variables hit " + inner.budget_hit;
        report.progress.push_back(step + "shared closure incomplete (" + inner.budget_hit + ")");
        return report;
      }
      const std::size_t block = valuation_count(n, k);
      std::vector<std::pair<std::vector<Elem>, std::size_t>> lows, ups;
      std::unordered_map<std::string, bool> seen_low, seen_up;
      for (std::size_t c = 0; c < full.columns.size(); ++c) {
        auto lo = fold_blocks(lattice, full.columns[c].values, block, true);
        if (seen_low.emplace(std::string(lo.begin(), lo.end()), true).second) lows.emplace_back(std::move(lo), c);
        auto up = fold_blocks(lattice, full.columns[c].values, block, false);
        if (seen_up.emplace(std::string(up.begin(), up.end()), true).second) ups.emplace_back(std::move(up), c);
      }
      const std::size_t rows = valuation_count(n, s);
      for (const auto& [lo, lo_col] : lows) {
        std::vector<const std::vector<Elem>*> above;
        for (const auto& col : inner.columns) {
          bool ok = true;
          for (std::size_t r = 0; r < rows && ok; ++r) ok = lattice.leq(lo[r], col.values[r]);
          if (ok) above.push_back(&col.values);
        }
        pair_work += ups.size() * (above.size() + 1) * rows;
        if (pair_work > options.max_pair_work) {
          report.status = Verdict::Unknown;
          report.reason = "pair scan exceeded its work budget";
          report.progress.push_back(step + "pair scan budget exhausted");
          return report;
        }
        for (const auto& [up, up_col] : ups) {
          bool ordered = true;
          for (std::size_t r = 0; r < rows && ordered; ++r) ordered = lattice.leq(lo[r], up[r]);
          if (!ordered) continue;
          bool gap = true;
          for (const auto* col : above) {
            bool ok = true;
            for (std::size_t r = 0; r < rows && ok; ++r) ok = lattice.leq((*col)[r], up[r]);
            if (ok) {
              gap = false;
              break;
            }
          }
          if (!gap) continue;
          std::map<std::string, Formula> to_right;
          for (std::size_t i = 0; i < k; ++i) to_right.emplace(left[i], Formula::variable("z" + std::to_string(i + 1)));
          report.witness_a = full.columns[lo_col].witness;
          report.witness_b = substitute_prop(full.columns[up_col].witness, to_right);
          auto check = find_prop_interpolant(*report.witness_a, *report.witness_b, lattice);
          if (check.status != Verdict::No)
            throw Error(ErrorCode::SmokeTestFailed, "gap witness unexpectedly interpolates");
          report.gap_lower = check.envelopes.lower;
          report.gap_upper = check.envelopes.upper;
          report.gap_shared = check.envelopes.shared;
          report.status = Verdict::No;
          report.reason = "valid pair without interpolant";
          report.progress.push_back(step + "gap found");
          return report;
        }
      }
      report.progress.push_back(step + std::to_string(lows.size()) + " lower and " + std::to_string(ups.size()) +
                                " upper envelopes, " + std::to_string(inner.columns.size()) +
                                " shared functions, no gap");
    }
  }
  if (bound >= n) {
    report.status = Verdict::Yes;
    report.reason = "no gap for up to |L| left, right and shared variables";
  } else {
    report.status = Verdict::Unknown;
    report.reason = "no gap within the bound " + std::to_string(bound);
  }
  return report;
}

SpectrumReport spectrum(const Lattice& lattice, const DecideOptions& options) {
  SpectrumReport report;
  const std::size_t n = lattice.size();
  if (n > 16) throw Error(ErrorCode::BudgetExceeded, "spectrum is limited to 16 elements");
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<Constant> constants;
    std::vector<Elem> subset;
    for (std::size_t e = 0; e < n; ++e) {
      if (!(mask >> e & 1u)) continue;
      subset.push_back(static_cast<Elem>(e));
      constants.push_back({lattice.name(static_cast<Elem>(e)), static_cast<Elem>(e)});
    }
    const auto decision = decide_interpolation(lattice.with_constants(constants), options);
    report.entries.push_back({subset, decision.status, decision.reason});
  }
  for (std::uint32_t v = 0; v < report.entries.size(); ++v) {
    if (report.entries[v].status != Verdict::Yes) continue;
    for (std::uint32_t w = 0; w < report.entries.size(); ++w) {
      if ((v & w) == v && report.entries[w].status == Verdict::No)
        report.monotonicity_violations.push_back(std::to_string(v) + " YES but superset " + std::to_string(w) + " NO");
    }
  }
  return report;
}

}  // namespace fvl
