#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "fregean/flow_graph.hpp"

namespace fregean {

inline bool is_planar(const UndirectedView& view) {
  using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  Graph g(view.vertex_count);
  for (auto [a, b] : view.edges) boost::add_edge(a, b, g);
  return boost::boyer_myrvold_planarity_test(g);
}

inline std::size_t count_components(const UndirectedView& view) {
  auto adj = view.adjacency();
  std::vector<bool> seen(view.vertex_count, false);
  std::size_t components = 0;
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < view.vertex_count; ++s) {
    if (seen[s]) continue;
    ++components;
    seen[s] = true;
    stack.push_back(s);
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto w : adj[v])
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
    }
  }
  return components;
}

/// Connected, at least three vertices, every degree exactly two.
inline bool is_simple_cycle(const UndirectedView& view) {
  if (view.vertex_count < 3 || view.edges.size() != view.vertex_count) return false;
  std::vector<std::size_t> degree(view.vertex_count, 0);
  for (auto [a, b] : view.edges) {
    ++degree[a];
    ++degree[b];
  }
  for (auto d : degree)
    if (d != 2) return false;
  return count_components(view) == 1;
}

/// Largest view for which the Hamiltonian-cycle search is attempted.
inline constexpr std::size_t max_hamiltonian_vertices = 16;

/// Whether the view has a cycle through every vertex; nullopt when the view
/// is too large to decide by subset DP.
inline std::optional<bool> has_hamiltonian_cycle(const UndirectedView& view) {
  const std::size_t n = view.vertex_count;
  if (n < 3) return false;
  if (n > max_hamiltonian_vertices) return std::nullopt;
  std::vector<std::uint32_t> adj(n, 0);
  for (auto [a, b] : view.edges) {
    adj[a] |= 1u << b;
    adj[b] |= 1u << a;
  }
  // ends[mask]: vertices v such that some path from vertex 0 visits exactly
  // `mask` and stops at v.
  const std::uint32_t full = (1u << n) - 1;
  std::vector<std::uint32_t> ends(std::size_t{1} << n, 0);
  ends[1] = 1;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    if (!(mask & 1u) || !ends[mask]) continue;
    for (std::size_t v = 0; v < n; ++v) {
      if (!(ends[mask] >> v & 1u)) continue;
      std::uint32_t next = adj[v] & ~mask;
      for (std::size_t w = 0; w < n; ++w)
        if (next >> w & 1u) ends[mask | (1u << w)] |= 1u << w;
    }
  }
  return (ends[full] & adj[0]) != 0;
}

struct GeometryReport {
  std::size_t vertices = 0;
  std::size_t edges = 0;  // undirected view edges
  std::size_t components = 0;
  bool connected = false;
  bool planar = true;
  bool simple_cycle = false;
  // Edges off a Hamiltonian cycle. Absent when no such cycle exists (or the
  // view is too large to search).
  std::optional<std::size_t> internal_edges;

  friend bool operator==(const GeometryReport&, const GeometryReport&) = default;
};

inline GeometryReport geometry_report(const UndirectedView& view) {
  GeometryReport r;
  r.vertices = view.vertex_count;
  r.edges = view.edges.size();
  r.components = count_components(view);
  r.connected = r.components == 1;
  r.planar = is_planar(view);
  r.simple_cycle = is_simple_cycle(view);
  if (r.simple_cycle) {
    r.internal_edges = 0;
  } else if (r.connected && has_hamiltonian_cycle(view).value_or(false)) {
    r.internal_edges = view.edges.size() - view.vertex_count;
  }
  return r;
}

inline GeometryReport geometry_report(const FlowGraph& graph) {
  return geometry_report(underlying_undirected(graph));
}

}  // namespace fregean
