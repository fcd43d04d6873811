#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "fregean/horn.hpp"
#include "fregean/parser.hpp"

using namespace fregean;

namespace {

CoreScript core_of(const std::string& src) { return desugar(parse_script(src)); }

std::vector<StatementId> ids(std::initializer_list<const char*> names) {
  std::vector<StatementId> out;
  for (auto n : names) out.emplace_back(n);
  return out;
}

// Least closed superset of the axioms, by trying every subset.
std::vector<StatementId> closure_by_subsets(const CoreScript& s) {
  const std::size_t n = s.statements.size();
  auto in = [&](std::uint32_t mask, const StatementId& id) {
    for (std::size_t i = 0; i < n; ++i)
      if (s.statements[i].id == id) return (mask >> i & 1u) != 0;
    return false;
  };
  std::uint32_t meet = (1u << n) - 1;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool ok = std::all_of(s.axioms.begin(), s.axioms.end(),
                          [&](const StatementId& a) { return in(mask, a); });
    for (const auto& e : s.entailments) {
      bool fires = std::all_of(e.premises.begin(), e.premises.end(),
                               [&](const StatementId& p) { return in(mask, p); });
      if (fires && !in(mask, e.conclusion)) ok = false;
    }
    if (ok) meet &= mask;
  }
  std::vector<StatementId> out;
  for (std::size_t i = 0; i < n; ++i)
    if (meet >> i & 1u) out.push_back(s.statements[i].id);
  std::sort(out.begin(), out.end());
  return out;
}

// Renaming-invariant key computed from text, independent of the
// enumerator's bitmask canonicalization.
std::string renaming_key(const CoreScript& s) {
  const std::size_t n = s.statements.size();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[s.statements[i].id.name] = i;
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::string best;
  bool first = true;
  do {
    std::vector<std::string> lines;
    for (const auto& e : s.entailments) {
      std::vector<std::size_t> ps;
      for (const auto& p : e.premises) ps.push_back(perm[index[p.name]]);
      std::sort(ps.begin(), ps.end());
      std::string line;
      for (auto p : ps) line += std::to_string(p) + ",";
      lines.push_back(line + ">" + std::to_string(perm[index[e.conclusion.name]]));
    }
    std::sort(lines.begin(), lines.end());
    std::vector<std::size_t> ax;
    for (const auto& a : s.axioms) ax.push_back(perm[index[a.name]]);
    std::sort(ax.begin(), ax.end());
    std::string key = std::to_string(n) + "|";
    for (auto a : ax) key += std::to_string(a) + ",";
    for (const auto& l : lines) key += "|" + l;
    if (first || key < best) best = key;
    first = false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Every labeled script within bounds, keyed by renaming class.
std::set<std::string> all_classes(const EnumerationBounds& b) {
  std::set<std::string> keys;
  for (std::size_t n = 1; n <= b.max_statements; ++n) {
    std::vector<std::pair<std::vector<std::size_t>, std::size_t>> pool;
    for (std::size_t c = 0; c < n; ++c)
      for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<std::size_t> ps;
        for (std::size_t i = 0; i < n; ++i)
          if (mask >> i & 1u) ps.push_back(i);
        if (ps.size() <= b.max_premises && !(mask >> c & 1u)) pool.emplace_back(ps, c);
      }
    for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << pool.size()); ++pick) {
      if (static_cast<std::size_t>(__builtin_popcountll(pick)) > b.max_entailments) continue;
      for (std::uint32_t ax = 0; ax < (1u << n); ++ax) {
        CoreScript s;
        for (std::size_t i = 0; i < n; ++i)
          s.statements.push_back({StatementId("T" + std::to_string(i)), std::nullopt});
        for (std::size_t i = 0; i < n; ++i)
          if (ax >> i & 1u) s.axioms.push_back(s.statements[i].id);
        for (std::size_t k = 0; k < pool.size(); ++k)
          if (pick >> k & 1u) {
            Entailment e;
            e.tag = s.entailments.size();
            for (auto p : pool[k].first) e.premises.push_back(s.statements[p].id);
            e.conclusion = s.statements[pool[k].second].id;
            s.entailments.push_back(e);
          }
        keys.insert(renaming_key(s));
      }
    }
  }
  return keys;
}

}  // namespace

TEST(HornClosure, OneRound) {
  auto r = horn_closure(core_of("axiom A; axiom B; A & B => C;"));
  EXPECT_EQ(r.derivable, ids({"A", "B", "C"}));
  EXPECT_EQ(r.rounds, 1u);
}

TEST(HornClosure, MissingPremise) {
  auto r = horn_closure(core_of("axiom A; A & B => C;"));
  EXPECT_EQ(r.derivable, ids({"A"}));
  EXPECT_EQ(r.rounds, 0u);
}

TEST(HornClosure, AroundTheCycle) {
  auto r = horn_closure(core_of("axiom D1; D1 => L1; L1 => D2; D2 => L2; L2 => D1;"));
  EXPECT_EQ(r.derivable, ids({"D1", "D2", "L1", "L2"}));
}

TEST(HornClosure, MatchesLeastClosedSuperset) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    auto s = random_script(seed, {7, 8, 3});
    auto r = horn_closure(s);
    ASSERT_EQ(r.derivable, closure_by_subsets(s)) << print_script(s);
  }
}

TEST(CheckEquivalence, BothAffirmative) {
  auto r = check_equivalence(core_of("axiom A; axiom B; A & B => C;"));
  EXPECT_TRUE(r.contraction_verdict);
  EXPECT_TRUE(r.closure_all);
  EXPECT_TRUE(r.agree);
  EXPECT_TRUE(r.witness_match);
}

TEST(CheckEquivalence, BothNegativeWithMatchingWitness) {
  auto r = check_equivalence(core_of("axiom A; A & B => C;"));
  EXPECT_FALSE(r.contraction_verdict);
  EXPECT_FALSE(r.closure_all);
  EXPECT_TRUE(r.agree);
  EXPECT_EQ(r.stuck_unestablished, ids({"B", "C"}));
  EXPECT_EQ(r.underivable, ids({"B", "C"}));
}

TEST(CheckEquivalence, EmptyScript) {
  auto r = check_equivalence(CoreScript{});
  EXPECT_TRUE(r.contraction_verdict);
  EXPECT_TRUE(r.closure_all);
  EXPECT_TRUE(r.agree);
}

TEST(CheckEquivalence, AxiomFreeScript) {
  auto r = check_equivalence(core_of("A => B;"));
  EXPECT_FALSE(r.contraction_verdict);
  EXPECT_TRUE(r.agree);
  EXPECT_TRUE(r.witness_match);
}

TEST(CheckEquivalence, DigestIsStableAndDiscriminating) {
  auto a = check_equivalence(core_of("axiom A; A => B;"));
  auto b = check_equivalence(core_of("axiom A; A => B;"));
  auto c = check_equivalence(core_of("axiom B; A => B;"));
  EXPECT_EQ(a.digest, b.digest);
  EXPECT_NE(a.digest, c.digest);
  EXPECT_EQ(a.digest.size(), 16u);
}

TEST(EnumerateScripts, SmallestStratum) {
  auto scripts = enumerate_scripts({1, 1, 1});
  ASSERT_EQ(scripts.size(), 2u);  // one statement; axioms {} or {S1}
  for (const auto& s : scripts) EXPECT_TRUE(s.entailments.empty());
}

TEST(EnumerateScripts, TwoStatementsByHand) {
  // n=1: 2. n=2, no entailment: axioms {}, {S1}, {S1,S2} (3).
  // n=2, [S1]=>S2 under all four axiom subsets (4).
  EXPECT_EQ(enumerate_scripts({2, 1, 1}).size(), 9u);
  auto wide = enumerate_scripts({2, 1, 2});
  EXPECT_EQ(wide.size(), 9u);
  for (const auto& s : wide)
    for (const auto& e : s.entailments) EXPECT_EQ(e.premises.size(), 1u);
}

TEST(EnumerateScripts, Reproducible) {
  EXPECT_EQ(enumerate_scripts({3, 2, 2}), enumerate_scripts({3, 2, 2}));
}

TEST(EnumerateScripts, OneScriptPerRenamingClass) {
  for (EnumerationBounds b : {EnumerationBounds{3, 2, 2}, EnumerationBounds{3, 3, 1},
                              EnumerationBounds{4, 1, 3}}) {
    auto scripts = enumerate_scripts(b);
    std::set<std::string> seen;
    for (const auto& s : scripts) {
      ASSERT_FALSE(find_violation(s)) << *find_violation(s);
      ASSERT_TRUE(seen.insert(renaming_key(s)).second) << print_script(s);
    }
    EXPECT_EQ(seen, all_classes(b));
  }
}

TEST(EnumerateScripts, RejectsZeroBounds) {
  EXPECT_THROW(enumerate_scripts({0, 1, 1}), std::invalid_argument);
  EXPECT_THROW(enumerate_scripts({1, 0, 1}), std::invalid_argument);
}

TEST(RandomScript, DeterministicValidNonempty) {
  EXPECT_EQ(random_script(0), random_script(0));
  EXPECT_NE(print_script(random_script(0)), print_script(random_script(1)));
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    auto s = random_script(seed);
    ASSERT_FALSE(find_violation(s)) << *find_violation(s);
    ASSERT_FALSE(s.axioms.empty());
    ASSERT_LE(s.statements.size(), 10u);
    ASSERT_LE(s.entailments.size(), 8u);
    for (const auto& e : s.entailments) ASSERT_LE(e.premises.size(), 3u);
    // Text round trip through the parser and builder.
    auto reparsed = desugar(parse_script(print_script(s)));
    ASSERT_EQ(reparsed, s);
    EXPECT_NO_THROW(build_flow_graph(reparsed));
  }
}

TEST(RandomScript, RejectsBadParams) {
  EXPECT_THROW(random_script(0, {0, 1, 1}), std::invalid_argument);
  EXPECT_THROW(random_script(0, {65, 1, 1}), std::invalid_argument);
}

TEST(ConjectureProperties, ReversedOrderingAgreesOnSmallStratum) {
  for_each_script({4, 3, 2}, [](const CoreScript& s) {
    auto canonical = check_equivalence(s, OrderingPolicy::canonical);
    auto reversed = check_equivalence(s, OrderingPolicy::reversed);
    ASSERT_TRUE(reversed.agree && reversed.witness_match) << print_script(s);
    ASSERT_EQ(canonical.contraction_verdict, reversed.contraction_verdict) << print_script(s);
  });
}
