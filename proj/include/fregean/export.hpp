#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fregean/contraction.hpp"
#include "fregean/flow_graph.hpp"
#include "fregean/geometry.hpp"
#include "fregean/horn.hpp"

namespace fregean {

using ordered_json = nlohmann::ordered_json;

/// Graphviz text. Nodes in name order, edges in edge_order; thru edges blue,
/// implies edges black, axioms drawn as double circles.
inline std::string export_dot(const FlowGraph& graph) {
  std::ostringstream out;
  out << "digraph flow {\n";
  for (const auto& v : graph.vertices()) {
    out << "  \"" << v.name << "\"";
    if (graph.is_axiom(v)) out << " [shape=\"doublecircle\"]";
    out << ";\n";
  }
  for (const auto& e : graph.edges()) {
    out << "  \"" << e.src.name << "\" -> \"" << e.dst.name << "\" ";
    if (e.colour == EdgeColour::thru)
      out << "[color=\"blue\",label=\"thru\"]";
    else
      out << "[color=\"black\",label=\"implies\"]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

inline ordered_json names_json(const std::vector<StatementId>& ids) {
  ordered_json arr = ordered_json::array();
  for (const auto& id : ids) arr.push_back(id.name);
  return arr;
}

inline ordered_json graph_json(const FlowGraph& graph) {
  ordered_json j;
  j["statements"] = names_json(graph.vertices());
  j["axioms"] = names_json(graph.axioms());
  ordered_json edges = ordered_json::array();
  for (const auto& e : graph.edges())
    edges.push_back({{"src", e.src.name},
                     {"dst", e.dst.name},
                     {"colour", to_string(e.colour)},
                     {"entailment", e.entailment}});
  j["edges"] = std::move(edges);
  return j;
}

inline std::string export_json(const FlowGraph& graph) { return graph_json(graph).dump(2) + "\n"; }

/// Inverse of export_json. Throws std::runtime_error on malformed input.
inline FlowGraph import_json(const std::string& text) {
  auto fail = [](const std::string& why) { throw std::runtime_error("graph json: " + why); };
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(e.what());
  }
  auto ids = [&](const char* key) {
    std::vector<StatementId> out;
    if (!j.contains(key) || !j[key].is_array()) fail(std::string("missing array '") + key + "'");
    for (const auto& s : j[key]) {
      if (!s.is_string() || !is_valid_identifier(s.get<std::string>())) fail("bad statement name");
      out.emplace_back(s.get<std::string>());
    }
    return out;
  };
  auto vertices = ids("statements");
  auto axioms = ids("axioms");
  std::vector<FlowEdge> edges;
  if (!j.contains("edges") || !j["edges"].is_array()) fail("missing array 'edges'");
  for (const auto& e : j["edges"]) {
    auto colour = parse_colour(e.value("colour", std::string{}));
    if (!colour || !e.contains("entailment") || !e["entailment"].is_number_unsigned())
      fail("bad edge record");
    edges.push_back({StatementId(e.value("src", std::string{})),
                     StatementId(e.value("dst", std::string{})), *colour,
                     e["entailment"].get<std::size_t>()});
  }
  FlowGraph g(std::move(vertices), std::move(axioms), std::move(edges));
  for (const auto& a : g.axioms())
    if (!g.index_of(a)) fail("axiom '" + a.name + "' is not a statement");
  for (const auto& e : g.edges())
    if (!g.index_of(e.src) || !g.index_of(e.dst)) fail("edge endpoint is not a statement");
  return g;
}

inline ordered_json step_json(std::size_t index, const ContractionStep& step) {
  return {{"step", index},
          {"rule", to_string(step.rule)},
          {"edge",
           {{"src", step.src_label},
            {"dst", step.dst_label},
            {"colour", to_string(step.edge.colour)},
            {"entailment", step.edge.entailment}}}};
}

inline ordered_json result_json(const ContractionResult& r) {
  return {{"contracted", r.contracted},
          {"single_vertex", r.single_vertex},
          {"clusters", r.clusters},
          {"steps", r.trace.size()},
          {"stuck_unestablished", names_json(r.stuck_unestablished)}};
}

inline ordered_json geometry_json(const GeometryReport& g) {
  ordered_json j{{"vertices", g.vertices},      {"edges", g.edges},
                 {"components", g.components},  {"connected", g.connected},
                 {"planar", g.planar},          {"simple_cycle", g.simple_cycle}};
  j["internal_edges"] = g.internal_edges ? ordered_json(*g.internal_edges) : ordered_json(nullptr);
  return j;
}

inline ordered_json conjecture_json(const ConjectureReport& r) {
  return {{"digest", r.digest},
          {"contraction_verdict", r.contraction_verdict},
          {"closure_all", r.closure_all},
          {"agree", r.agree},
          {"witness_match", r.witness_match},
          {"stuck_unestablished", names_json(r.stuck_unestablished)},
          {"underivable", names_json(r.underivable)},
          {"trace_length", r.trace_length}};
}

}  // namespace fregean
