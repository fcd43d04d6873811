#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "fregean/script.hpp"

namespace fregean {

// Declaration order doubles as the deterministic sort order for edges.
enum class EdgeColour { thru, implies };

inline const char* to_string(EdgeColour c) { return c == EdgeColour::thru ? "thru" : "implies"; }

inline std::optional<EdgeColour> parse_colour(std::string_view s) {
  if (s == "thru") return EdgeColour::thru;
  if (s == "implies") return EdgeColour::implies;
  return std::nullopt;
}

struct FlowEdge {
  StatementId src;
  StatementId dst;
  EdgeColour colour = EdgeColour::implies;
  std::size_t entailment = 0;

  friend bool operator==(const FlowEdge&, const FlowEdge&) = default;
};

/// Sort key shared by the DOT/JSON exporters and the contraction engine:
/// entailment tag, then colour, then endpoint names.
inline bool edge_order(const FlowEdge& a, const FlowEdge& b) {
  return std::tie(a.entailment, a.colour, a.src, a.dst) <
         std::tie(b.entailment, b.colour, b.src, b.dst);
}

/// Directed, edge-coloured multigraph over statements. Vertices and axioms
/// are kept sorted by name; edges are kept in edge_order.
class FlowGraph {
 public:
  FlowGraph() = default;

  FlowGraph(std::vector<StatementId> vertices, std::vector<StatementId> axioms,
            std::vector<FlowEdge> edges)
      : vertices_(std::move(vertices)), axioms_(std::move(axioms)), edges_(std::move(edges)) {
    normalize(vertices_);
    normalize(axioms_);
    std::sort(edges_.begin(), edges_.end(), edge_order);
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  }

  const std::vector<StatementId>& vertices() const { return vertices_; }
  const std::vector<StatementId>& axioms() const { return axioms_; }
  const std::vector<FlowEdge>& edges() const { return edges_; }

  std::size_t vertex_count() const { return vertices_.size(); }

  std::optional<std::size_t> index_of(const StatementId& id) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id);
    if (it == vertices_.end() || *it != id) return std::nullopt;
    return static_cast<std::size_t>(it - vertices_.begin());
  }

  bool is_axiom(const StatementId& id) const {
    return std::binary_search(axioms_.begin(), axioms_.end(), id);
  }

  std::size_t count(EdgeColour c) const {
    return static_cast<std::size_t>(
        std::count_if(edges_.begin(), edges_.end(), [c](const FlowEdge& e) { return e.colour == c; }));
  }

  friend bool operator==(const FlowGraph&, const FlowGraph&) = default;

 private:
  static void normalize(std::vector<StatementId>& ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  }

  std::vector<StatementId> vertices_;
  std::vector<StatementId> axioms_;
  std::vector<FlowEdge> edges_;
};

/// How the premises of an entailment are laid along its thru chain.
enum class OrderingPolicy {
  canonical,  // script order: A thru B entails C
  reversed,   // B thru A entails C
};

/// Each entailment [p1..pn] => c becomes the thru path p1 -> ... -> pn plus
/// the implies edge pn -> c, all tagged with the entailment's ordinal.
/// Every script statement is a vertex.
inline FlowGraph build_flow_graph(const CoreScript& script,
                                  OrderingPolicy ordering = OrderingPolicy::canonical) {
  std::vector<StatementId> vertices;
  vertices.reserve(script.statements.size());
  for (const auto& s : script.statements) vertices.push_back(s.id);

  std::vector<FlowEdge> edges;
  for (const auto& e : script.entailments) {
    std::vector<StatementId> chain = e.premises;
    if (ordering == OrderingPolicy::reversed) std::reverse(chain.begin(), chain.end());
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
      edges.push_back({chain[i], chain[i + 1], EdgeColour::thru, e.tag});
    edges.push_back({chain.back(), e.conclusion, EdgeColour::implies, e.tag});
  }
  return FlowGraph(std::move(vertices), script.axioms, std::move(edges));
}

/// Simple undirected graph on vertices 0..n-1. Edges are (lo, hi) pairs,
/// lo < hi, sorted and unique.
struct UndirectedView {
  std::size_t vertex_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  friend bool operator==(const UndirectedView&, const UndirectedView&) = default;

  void add_edge(std::size_t a, std::size_t b) {
    if (a == b) return;
    edges.emplace_back(std::min(a, b), std::max(a, b));
  }

  void normalize() {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }

  std::vector<std::vector<std::size_t>> adjacency() const {
    std::vector<std::vector<std::size_t>> adj(vertex_count);
    for (auto [a, b] : edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    return adj;
  }
};

/// The colourless shadow of a flow graph: one undirected edge per endpoint
/// pair carrying at least one flow edge. Vertex i is graph.vertices()[i].
inline UndirectedView underlying_undirected(const FlowGraph& graph) {
  UndirectedView view;
  view.vertex_count = graph.vertex_count();
  for (const auto& e : graph.edges()) view.add_edge(*graph.index_of(e.src), *graph.index_of(e.dst));
  view.normalize();
  return view;
}

}  // namespace fregean
