#pragma once

// Ground truth for the contraction engine: forward-chaining Horn closure,
// the per-script comparison of both verdicts, and script generators for
// exhaustive and randomized sweeps.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fregean/contraction.hpp"
#include "fregean/flow_graph.hpp"
#include "fregean/parser.hpp"
#include "fregean/script.hpp"

namespace fregean {

struct ClosureResult {
  std::vector<StatementId> derivable;  // sorted
  std::size_t rounds = 0;              // passes that derived something new
};

/// Least fixpoint of: axioms are derivable; the conclusion of an entailment
/// whose premises are all derivable is derivable. Naive saturation.
inline ClosureResult horn_closure(const CoreScript& script) {
  std::set<StatementId> known(script.axioms.begin(), script.axioms.end());
  ClosureResult r;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& e : script.entailments) {
      if (known.count(e.conclusion)) continue;
      if (std::all_of(e.premises.begin(), e.premises.end(),
                      [&](const StatementId& p) { return known.count(p) > 0; })) {
        known.insert(e.conclusion);
        changed = true;
      }
    }
    if (changed) ++r.rounds;
  }
  r.derivable.assign(known.begin(), known.end());
  return r;
}

/// 64-bit FNV-1a of the canonical script text, as 16 hex digits.
inline std::string script_digest(const CoreScript& script) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : print_script(script)) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = hex[h & 0xf];
  return out;
}

struct ConjectureReport {
  std::string digest;
  bool contraction_verdict = false;
  bool closure_all = false;
  bool agree = false;          // contraction_verdict == closure_all
  bool witness_match = false;  // stuck set == statements \ derivable
  std::vector<StatementId> stuck_unestablished;
  std::vector<StatementId> underivable;
  std::size_t trace_length = 0;
};

inline std::vector<StatementId> sorted_statements(const CoreScript& script) {
  std::vector<StatementId> all;
  for (const auto& s : script.statements) all.push_back(s.id);
  std::sort(all.begin(), all.end());
  return all;
}

/// Runs the deterministic contraction and the Horn closure on `script` and
/// compares the verdicts and the witness sets.
inline ConjectureReport check_equivalence(const CoreScript& script,
                                          OrderingPolicy ordering = OrderingPolicy::canonical) {
  ConjectureReport r;
  r.digest = script_digest(script);

  // The unchecked constructor covers axiom-free scripts: nothing is
  // established and no step ever applies.
  auto graph = std::make_shared<const FlowGraph>(build_flow_graph(script, ordering));
  auto run = run_to_fixpoint(ContractionState(graph));
  r.contraction_verdict = run.contracted;
  r.stuck_unestablished = run.stuck_unestablished;
  r.trace_length = run.trace.size();

  auto closure = horn_closure(script);
  auto all = sorted_statements(script);
  std::set_difference(all.begin(), all.end(), closure.derivable.begin(), closure.derivable.end(),
                      std::back_inserter(r.underivable));
  r.closure_all = r.underivable.empty();
  r.agree = r.contraction_verdict == r.closure_all;
  r.witness_match = r.stuck_unestablished == r.underivable;
  return r;
}

struct EnumerationBounds {
  std::size_t max_statements = 1;
  std::size_t max_entailments = 1;
  std::size_t max_premises = 1;
};

namespace detail {

// Statements are 0..n-1 (named S1..Sn); premises is a bitmask.
struct RawEntailment {
  std::uint32_t premises = 0;
  std::uint32_t conclusion = 0;

  friend auto operator<=>(const RawEntailment&, const RawEntailment&) = default;
  friend bool operator==(const RawEntailment&, const RawEntailment&) = default;
};

inline std::uint32_t permute_mask(std::uint32_t mask, const std::vector<std::uint32_t>& perm) {
  std::uint32_t out = 0;
  for (std::uint32_t i = 0; i < perm.size(); ++i)
    if (mask >> i & 1u) out |= 1u << perm[i];
  return out;
}

struct RawScript {
  std::vector<RawEntailment> entailments;  // sorted
  std::uint32_t axioms = 0;

  friend auto operator<=>(const RawScript&, const RawScript&) = default;
  friend bool operator==(const RawScript&, const RawScript&) = default;

  RawScript renamed(const std::vector<std::uint32_t>& perm) const {
    RawScript out;
    out.axioms = permute_mask(axioms, perm);
    for (const auto& e : entailments)
      out.entailments.push_back({permute_mask(e.premises, perm), perm[e.conclusion]});
    std::sort(out.entailments.begin(), out.entailments.end());
    return out;
  }
};

inline CoreScript to_core(const RawScript& raw, std::size_t n) {
  CoreScript core;
  auto name = [](std::uint32_t i) { return StatementId("S" + std::to_string(i + 1)); };
  for (std::uint32_t i = 0; i < n; ++i) core.statements.push_back({name(i), std::nullopt});
  for (std::uint32_t i = 0; i < n; ++i)
    if (raw.axioms >> i & 1u) core.axioms.push_back(name(i));
  for (const auto& e : raw.entailments) {
    Entailment out;
    out.tag = core.entailments.size();
    for (std::uint32_t i = 0; i < n; ++i)
      if (e.premises >> i & 1u) out.premises.push_back(name(i));
    out.conclusion = name(e.conclusion);
    core.entailments.push_back(std::move(out));
  }
  return core;
}

}  // namespace detail

/// Visits, in a fixed order, one representative of every renaming class of
/// CoreScripts over S1..Sn (1 <= n <= max_statements) with at most
/// max_entailments distinct entailments of 1..max_premises premises, under
/// every axiom subset (the empty one included). Premises are listed in
/// name order; entailment order within a script carries no meaning.
inline void for_each_script(const EnumerationBounds& bounds,
                            const std::function<void(const CoreScript&)>& visit) {
  if (bounds.max_statements < 1 || bounds.max_entailments < 1 || bounds.max_premises < 1)
    throw std::invalid_argument("enumeration bounds must be at least 1");
  if (bounds.max_statements > 8)
    throw std::invalid_argument("enumeration supports at most 8 statements");

  for (std::uint32_t n = 1; n <= bounds.max_statements; ++n) {
    std::vector<detail::RawEntailment> pool;
    for (std::uint32_t c = 0; c < n; ++c)
      for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        auto k = static_cast<std::size_t>(__builtin_popcount(mask));
        if (k <= bounds.max_premises && !(mask >> c & 1u)) pool.push_back({mask, c});
      }
    std::sort(pool.begin(), pool.end());

    std::vector<std::vector<std::uint32_t>> perms;
    std::vector<std::uint32_t> perm(n);
    for (std::uint32_t i = 0; i < n; ++i) perm[i] = i;
    do perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));

    const std::size_t max_m = std::min(bounds.max_entailments, pool.size());
    for (std::size_t m = 0; m <= max_m; ++m) {
      std::vector<std::size_t> pick(m);
      for (std::size_t i = 0; i < m; ++i) pick[i] = i;
      for (;;) {
        detail::RawScript raw;
        for (auto i : pick) raw.entailments.push_back(pool[i]);
        for (std::uint32_t axioms = 0; axioms < (1u << n); ++axioms) {
          raw.axioms = axioms;
          bool canonical = true;
          for (const auto& p : perms)
            if (raw.renamed(p) < raw) {
              canonical = false;
              break;
            }
          if (canonical) visit(detail::to_core(raw, n));
        }
        // next m-combination of pool indices
        std::size_t i = m;
        while (i > 0 && pick[i - 1] == pool.size() - m + (i - 1)) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < m; ++j) pick[j] = pick[j - 1] + 1;
      }
    }
  }
}

inline std::vector<CoreScript> enumerate_scripts(const EnumerationBounds& bounds) {
  std::vector<CoreScript> out;
  for_each_script(bounds, [&](const CoreScript& s) { out.push_back(s); });
  return out;
}

struct RandomScriptParams {
  std::size_t max_statements = 10;
  std::size_t max_entailments = 8;
  std::size_t max_premises = 3;

  static constexpr std::size_t statement_limit = 64;
};

/// Pseudo-random valid CoreScript with a nonempty axiom set. Only the raw
/// mt19937_64 output is used, so the result depends on nothing but
/// `seed` and `params`.
inline CoreScript random_script(std::uint64_t seed, const RandomScriptParams& params = {}) {
  if (params.max_statements < 1 || params.max_statements > RandomScriptParams::statement_limit ||
      params.max_premises < 1)
    throw std::invalid_argument("random script parameters out of range");
  std::mt19937_64 rng(seed);
  auto below = [&](std::size_t bound) { return static_cast<std::size_t>(rng() % bound); };

  const std::size_t n = 1 + below(params.max_statements);
  CoreScript core;
  for (std::size_t i = 0; i < n; ++i)
    core.statements.push_back({StatementId("S" + std::to_string(i + 1)), std::nullopt});

  for (const auto& s : core.statements)
    if (below(10) < 3) core.axioms.push_back(s.id);
  if (core.axioms.empty()) core.axioms.push_back(core.statements[below(n)].id);

  // Half of the entailments draw their premises from statements already
  // reachable (axioms plus earlier chained conclusions), so that traces run
  // for more than a step or two; the rest draw from all statements.
  std::vector<std::size_t> reachable;
  for (std::size_t i = 0; i < n; ++i)
    if (core.is_axiom(core.statements[i].id)) reachable.push_back(i);

  std::vector<std::size_t> order(n);
  const std::size_t m = n < 2 ? 0 : below(params.max_entailments + 1);
  for (std::size_t attempt = 0; core.entailments.size() < m && attempt < 8 * m + 8; ++attempt) {
    const bool chained = below(2) == 0 && reachable.size() < n;
    const std::vector<std::size_t>* source = &order;
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::size_t k = 0;
    std::vector<std::size_t> premises;
    if (chained) {
      source = &reachable;
      k = 1 + below(std::min(params.max_premises, reachable.size()));
    } else {
      k = 1 + below(std::min(params.max_premises, n - 1));
    }
    std::vector<std::size_t> pool = *source;
    for (std::size_t i = pool.size() - 1; i > 0; --i) std::swap(pool[i], pool[below(i + 1)]);
    premises.assign(pool.begin(), pool.begin() + static_cast<long>(k));
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < n; ++i)
      if (std::find(premises.begin(), premises.end(), i) == premises.end() &&
          !(chained && std::find(reachable.begin(), reachable.end(), i) != reachable.end()))
        candidates.push_back(i);
    if (candidates.empty()) continue;
    const std::size_t conclusion = candidates[below(candidates.size())];

    Entailment e;
    e.tag = core.entailments.size();
    for (auto i : premises) e.premises.push_back(core.statements[i].id);
    e.conclusion = core.statements[conclusion].id;
    if (detail::find_duplicate(core.entailments, e.premises, e.conclusion)) continue;
    core.entailments.push_back(std::move(e));
    if (chained) reachable.push_back(conclusion);
  }
  return core;
}

}  // namespace fregean
