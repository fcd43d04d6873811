#pragma once

// Restricted edge contraction over flow graphs.
//
// Vertices are grouped into clusters; a cluster is either established
// (derived) or not. Two rules merge the endpoint clusters of a live edge:
//
//   R-THRU  a thru edge whose endpoint clusters are both established
//   R-IMPL  an implies edge whose source cluster is established and whose
//           entailment has no live thru edge left
//
// The merged cluster is established. Edges that become self-loops are
// dropped on the spot, so every step removes exactly one cluster.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_set>
#include <vector>

#include "fregean/flow_graph.hpp"

namespace fregean {

enum class Rule { thru, impl };

inline const char* to_string(Rule r) { return r == Rule::thru ? "R-THRU" : "R-IMPL"; }

/// Flow edge re-expressed over cluster representatives (the smallest vertex
/// index in each cluster).
struct ClusterEdge {
  std::uint32_t src = 0;
  std::uint32_t dst = 0;
  EdgeColour colour = EdgeColour::implies;
  std::size_t entailment = 0;

  friend auto operator<=>(const ClusterEdge&, const ClusterEdge&) = default;
  friend bool operator==(const ClusterEdge&, const ClusterEdge&) = default;
};

struct ContractionStep {
  Rule rule = Rule::impl;
  ClusterEdge edge;
  std::string src_label;  // cluster members joined by '+'
  std::string dst_label;

  friend bool operator==(const ContractionStep& a, const ContractionStep& b) {
    return a.rule == b.rule && a.edge == b.edge;
  }
};

class ContractionError : public std::runtime_error {
 public:
  enum class Kind { no_axioms, inapplicable_step, exhausted };

  ContractionError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class ContractionState {
 public:
  /// Singleton clusters, axioms established, every flow edge live. Never
  /// throws; see initial_state() for the checked variant.
  explicit ContractionState(std::shared_ptr<const FlowGraph> graph) : graph_(std::move(graph)) {
    const auto n = graph_->vertex_count();
    rep_.resize(n);
    established_.assign(n, 0);
    for (std::uint32_t v = 0; v < n; ++v) rep_[v] = v;
    for (const auto& a : graph_->axioms())
      if (auto i = graph_->index_of(a)) established_[*i] = 1;
    for (const auto& e : graph_->edges())
      live_.push_back({static_cast<std::uint32_t>(*graph_->index_of(e.src)),
                       static_cast<std::uint32_t>(*graph_->index_of(e.dst)), e.colour,
                       e.entailment});
    std::sort(live_.begin(), live_.end());
    live_.erase(std::unique(live_.begin(), live_.end()), live_.end());
    clusters_ = n;
  }

  const FlowGraph& graph() const { return *graph_; }
  const std::shared_ptr<const FlowGraph>& shared_graph() const { return graph_; }

  std::size_t cluster_count() const { return clusters_; }
  std::size_t step_count() const { return steps_; }
  const std::vector<ClusterEdge>& live_edges() const { return live_; }

  std::uint32_t cluster_of(std::size_t vertex) const { return rep_[vertex]; }
  bool is_established(std::uint32_t cluster) const { return established_[cluster] != 0; }

  std::vector<std::uint32_t> representatives() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t v = 0; v < rep_.size(); ++v)
      if (rep_[v] == v) out.push_back(v);
    return out;
  }

  std::vector<StatementId> members(std::uint32_t cluster) const {
    std::vector<StatementId> out;
    for (std::size_t v = 0; v < rep_.size(); ++v)
      if (rep_[v] == cluster) out.push_back(graph_->vertices()[v]);
    return out;
  }

  std::string label(std::uint32_t cluster) const {
    std::string out;
    for (const auto& m : members(cluster)) {
      if (!out.empty()) out += '+';
      out += m.name;
    }
    return out;
  }

  /// Original statements lying in established clusters, sorted by name.
  std::vector<StatementId> established_statements() const { return statements_where(true); }
  std::vector<StatementId> unestablished_statements() const { return statements_where(false); }

  /// Every statement established and no live edge left.
  bool is_contracted() const {
    return live_.empty() &&
           std::all_of(established_.begin(), established_.end(), [](char e) { return e != 0; });
  }

  /// Literally the single-vertex edgeless graph (or the empty graph).
  bool is_single_vertex() const { return clusters_ <= 1 && live_.empty(); }

  /// Cluster-level undirected shadow; vertex i is the i-th representative.
  UndirectedView undirected_view() const {
    auto reps = representatives();
    std::vector<std::size_t> slot(rep_.size(), 0);
    for (std::size_t i = 0; i < reps.size(); ++i) slot[reps[i]] = i;
    UndirectedView view;
    view.vertex_count = reps.size();
    for (const auto& e : live_) view.add_edge(slot[e.src], slot[e.dst]);
    view.normalize();
    return view;
  }

  /// Identity of the state up to step count; equal keys mean equal states.
  std::string key() const {
    std::string k;
    k.reserve(rep_.size() * 2 + live_.size() * 12);
    for (std::size_t v = 0; v < rep_.size(); ++v) {
      k += std::to_string(rep_[v]);
      k += established_[v] ? '*' : '.';
    }
    k += '|';
    for (const auto& e : live_) {
      k += std::to_string(e.src) + ',' + std::to_string(e.dst) + ',' +
           (e.colour == EdgeColour::thru ? 't' : 'i') + std::to_string(e.entailment) + ';';
    }
    return k;
  }

  std::vector<ContractionStep> applicable_steps() const {
    std::vector<ContractionStep> out;
    for (const auto& e : live_) {
      bool ok = false;
      if (e.colour == EdgeColour::thru) {
        ok = is_established(e.src) && is_established(e.dst);
      } else {
        ok = is_established(e.src) &&
             std::none_of(live_.begin(), live_.end(), [&](const ClusterEdge& t) {
               return t.colour == EdgeColour::thru && t.entailment == e.entailment;
             });
      }
      if (ok)
        out.push_back({e.colour == EdgeColour::thru ? Rule::thru : Rule::impl, e, label(e.src),
                       label(e.dst)});
    }
    std::sort(out.begin(), out.end(), [](const ContractionStep& a, const ContractionStep& b) {
      return std::tie(a.edge.entailment, a.edge.colour, a.src_label, a.dst_label) <
             std::tie(b.edge.entailment, b.edge.colour, b.src_label, b.dst_label);
    });
    return out;
  }

  /// Merges the endpoint clusters of `step.edge`.
  ContractionState apply(const ContractionStep& step) const {
    auto steps = applicable_steps();
    if (std::find(steps.begin(), steps.end(), step) == steps.end())
      throw ContractionError(ContractionError::Kind::inapplicable_step,
                             std::string(to_string(step.rule)) + " is not applicable to " +
                                 label_or_raw(step.edge.src) + " -> " + label_or_raw(step.edge.dst));
    ContractionState next = *this;
    next.merge(step.edge.src, step.edge.dst);
    return next;
  }

 private:
  std::string label_or_raw(std::uint32_t c) const {
    return c < rep_.size() && rep_[c] == c ? label(c) : "#" + std::to_string(c);
  }

  std::vector<StatementId> statements_where(bool established) const {
    std::vector<StatementId> out;
    for (std::size_t v = 0; v < rep_.size(); ++v)
      if ((established_[v] != 0) == established) out.push_back(graph_->vertices()[v]);
    return out;
  }

  void merge(std::uint32_t a, std::uint32_t b) {
    const std::uint32_t keep = std::min(a, b);
    const std::uint32_t gone = std::max(a, b);
    for (std::size_t v = 0; v < rep_.size(); ++v) {
      if (rep_[v] == gone) rep_[v] = keep;
      if (rep_[v] == keep) established_[v] = 1;
    }
    std::vector<ClusterEdge> kept;
    kept.reserve(live_.size());
    for (auto e : live_) {
      if (e.src == gone) e.src = keep;
      if (e.dst == gone) e.dst = keep;
      if (e.src != e.dst) kept.push_back(e);
    }
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    live_ = std::move(kept);
    --clusters_;
    ++steps_;
  }

  std::shared_ptr<const FlowGraph> graph_;
  std::vector<std::uint32_t> rep_;
  std::vector<char> established_;  // per vertex; uniform within a cluster
  std::vector<ClusterEdge> live_;
  std::size_t clusters_ = 0;
  std::size_t steps_ = 0;
};

/// Start state for `graph`. Throws NoAxioms when the graph has statements
/// but nothing is established.
inline ContractionState initial_state(const FlowGraph& graph) {
  if (graph.vertex_count() > 0 && graph.axioms().empty())
    throw ContractionError(ContractionError::Kind::no_axioms,
                           "no axioms: nothing can be established");
  return ContractionState(std::make_shared<const FlowGraph>(graph));
}

inline std::vector<ContractionStep> applicable_steps(const ContractionState& state) {
  return state.applicable_steps();
}

inline ContractionState apply_step(const ContractionState& state, const ContractionStep& step) {
  return state.apply(step);
}

struct StepPolicy {
  enum class Kind { deterministic, seeded };
  Kind kind = Kind::deterministic;
  std::uint64_t seed = 0;

  static StepPolicy deterministic() { return {}; }
  static StepPolicy seeded(std::uint64_t s) { return {Kind::seeded, s}; }
};

struct ContractionResult {
  bool contracted = false;
  bool single_vertex = false;
  std::size_t clusters = 0;
  std::vector<ContractionStep> trace;
  std::vector<StatementId> stuck_unestablished;  // sorted; empty when contracted
};

/// Applies steps until none is applicable. Deterministic picks the first
/// step in order; Seeded picks uniformly from an mt19937_64 stream.
inline ContractionResult run_to_fixpoint(ContractionState state,
                                         StepPolicy policy = StepPolicy::deterministic()) {
  ContractionResult result;
  std::mt19937_64 rng(policy.seed);
  for (;;) {
    auto steps = state.applicable_steps();
    if (steps.empty()) break;
    std::size_t pick = 0;
    if (policy.kind == StepPolicy::Kind::seeded) pick = static_cast<std::size_t>(rng() % steps.size());
    state = state.apply(steps[pick]);
    result.trace.push_back(std::move(steps[pick]));
  }
  result.contracted = state.is_contracted();
  result.single_vertex = state.is_single_vertex();
  result.clusters = state.cluster_count();
  result.stuck_unestablished = state.unestablished_statements();
  return result;
}

struct ConfluenceReport {
  std::size_t explored_states = 0;
  std::size_t terminal_states = 0;
  bool confluent = true;
  bool contracted = false;                   // verdict of the first terminal state
  std::vector<StatementId> unestablished;    // likewise
};

/// Exhaustively explores every maximal step order from the start state of
/// `graph`, merging identical states. Throws Exhausted once more than
/// `max_states` distinct states have been visited.
inline ConfluenceReport explore_all_orders(const FlowGraph& graph, std::size_t max_states) {
  ConfluenceReport report;
  std::unordered_set<std::string> seen;
  std::vector<ContractionState> stack{ContractionState(std::make_shared<const FlowGraph>(graph))};
  seen.insert(stack.back().key());
  bool first_terminal = true;
  while (!stack.empty()) {
    ContractionState state = std::move(stack.back());
    stack.pop_back();
    if (++report.explored_states > max_states)
      throw ContractionError(ContractionError::Kind::exhausted,
                             "state bound of " + std::to_string(max_states) + " exhausted");
    auto steps = state.applicable_steps();
    if (steps.empty()) {
      ++report.terminal_states;
      bool contracted = state.is_contracted();
      auto unestablished = state.unestablished_statements();
      if (first_terminal) {
        report.contracted = contracted;
        report.unestablished = std::move(unestablished);
        first_terminal = false;
      } else if (contracted != report.contracted || unestablished != report.unestablished) {
        report.confluent = false;
      }
      continue;
    }
    for (const auto& s : steps) {
      auto next = state.apply(s);
      if (seen.insert(next.key()).second) stack.push_back(std::move(next));
    }
  }
  return report;
}

}  // namespace fregean
