#pragma once

#include <cstddef>
#include <string>
#include <utility>

#include <json.hpp>

#include "dpo/errors.hpp"
#include "dpo/graph.hpp"
#include "dpo/morphism.hpp"
#include "dpo/pushout.hpp"
#include "dpo/rule.hpp"

namespace dpo {

// Input text is not well-formed JSON or not shaped like the expected
// document. line/column are 1-based; 0 means "no position" (shape errors).
struct ParseError : Error {
  ParseError(const std::string& message, std::size_t line_, std::size_t column_)
      : Error(message), line(line_), column(column_) {}
  std::size_t line;
  std::size_t column;
};

// Input parsed fine but the described object violates its axioms.
struct ValidationError : Error {
  ValidationError(std::string subject_, ValidationReport report_)
      : Error(subject_ + ": " + report_.str()),
        subject(std::move(subject_)),
        report(std::move(report_)) {}
  std::string subject;
  ValidationReport report;
};

namespace detail {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

inline std::pair<std::size_t, std::size_t> offset_to_position(
    const std::string& text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

inline json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, column] = offset_to_position(text, e.byte);
    throw ParseError(e.what(), line, column);
  }
}

inline const json& require(const json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(std::string(where) + ": missing key '" + key + "'", 0, 0);
  return j.at(key);
}

inline std::string require_string(const json& j, const char* key,
                                  const char* where) {
  const json& v = require(j, key, where);
  if (!v.is_string())
    throw ParseError(std::string(where) + ": key '" + key +
                         "' must be a string",
                     0, 0);
  return v.get<std::string>();
}

inline Graph graph_from_json(const json& j, const std::string& subject) {
  const char* where = subject.c_str();
  const json& nodes = require(j, "nodes", where);
  const json& edges = require(j, "edges", where);
  if (!nodes.is_array() || !edges.is_array())
    throw ParseError(subject + ": 'nodes' and 'edges' must be arrays", 0, 0);

  Graph g;
  ValidationReport duplicates;
  for (const json& n : nodes) {
    NodeId id = NodeId::parse(require_string(n, "id", where));
    if (g.nodes.contains(id))
      duplicates.violations.push_back(
          {Clause::map_domain, id.str(), "duplicate node id"});
    g.add_node(id, label(require_string(n, "label", where)));
  }
  for (const json& e : edges) {
    EdgeId id = EdgeId::parse(require_string(e, "id", where));
    if (g.edges.contains(id))
      duplicates.violations.push_back(
          {Clause::map_domain, id.str(), "duplicate edge id"});
    g.add_edge(id, NodeId::parse(require_string(e, "source", where)),
               NodeId::parse(require_string(e, "target", where)),
               label(require_string(e, "label", where)));
  }
  if (!duplicates.ok()) throw ValidationError(subject, std::move(duplicates));

  ValidationReport report = validate_graph(g);
  if (!report.ok()) throw ValidationError(subject, std::move(report));
  return g;
}

inline ordered_json graph_to_json(const Graph& g) {
  ordered_json nodes = ordered_json::array();
  for (const NodeId& v : g.nodes) {
    ordered_json n;
    n["id"] = v.str();
    n["label"] = g.node_label.at(v).text;
    nodes.push_back(std::move(n));
  }
  ordered_json edges = ordered_json::array();
  for (const EdgeId& e : g.edges) {
    ordered_json doc;
    doc["id"] = e.str();
    doc["source"] = g.source.at(e).str();
    doc["target"] = g.target.at(e).str();
    doc["label"] = g.edge_label.at(e).text;
    edges.push_back(std::move(doc));
  }
  ordered_json out;
  out["nodes"] = std::move(nodes);
  out["edges"] = std::move(edges);
  return out;
}

inline Morphism morphism_from_json(const json& j, const std::string& subject) {
  const char* where = subject.c_str();
  const json& nodes = require(j, "nodes", where);
  const json& edges = require(j, "edges", where);
  if (!nodes.is_object() || !edges.is_object())
    throw ParseError(subject + ": 'nodes' and 'edges' must be objects", 0, 0);

  Morphism m;
  for (const auto& [k, v] : nodes.items()) {
    if (!v.is_string())
      throw ParseError(subject + ": image of '" + k + "' must be a string", 0,
                       0);
    m.node_map.emplace(NodeId::parse(k), NodeId::parse(v.get<std::string>()));
  }
  for (const auto& [k, v] : edges.items()) {
    if (!v.is_string())
      throw ParseError(subject + ": image of '" + k + "' must be a string", 0,
                       0);
    m.edge_map.emplace(EdgeId::parse(k), EdgeId::parse(v.get<std::string>()));
  }
  return m;
}

inline ordered_json morphism_to_json(const Morphism& m) {
  ordered_json nodes = ordered_json::object();
  for (const auto& [v, w] : m.node_map) nodes[v.str()] = w.str();
  ordered_json edges = ordered_json::object();
  for (const auto& [e, d] : m.edge_map) edges[e.str()] = d.str();
  ordered_json out;
  out["nodes"] = std::move(nodes);
  out["edges"] = std::move(edges);
  return out;
}

inline std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace detail

inline Graph parse_graph(const std::string& text) {
  return detail::graph_from_json(detail::parse_text(text), "graph");
}

inline std::string serialize_graph(const Graph& g) {
  return detail::dump(detail::graph_to_json(g));
}

inline Rule parse_rule(const std::string& text) {
  detail::json j = detail::parse_text(text);
  Rule r;
  r.left = detail::graph_from_json(detail::require(j, "left", "rule"), "left");
  r.interface = detail::graph_from_json(
      detail::require(j, "interface", "rule"), "interface");
  r.right =
      detail::graph_from_json(detail::require(j, "right", "rule"), "right");

  ValidationReport report = validate_rule(r);
  if (!report.ok()) throw ValidationError("rule", std::move(report));
  return r;
}

inline std::string serialize_rule(const Rule& r) {
  detail::ordered_json out;
  out["left"] = detail::graph_to_json(r.left);
  out["interface"] = detail::graph_to_json(r.interface);
  out["right"] = detail::graph_to_json(r.right);
  return detail::dump(out);
}

inline Square parse_square(const std::string& text) {
  detail::json j = detail::parse_text(text);
  Square sq;
  sq.A = detail::graph_from_json(detail::require(j, "A", "square"), "A");
  sq.B = detail::graph_from_json(detail::require(j, "B", "square"), "B");
  sq.C = detail::graph_from_json(detail::require(j, "C", "square"), "C");
  sq.D = detail::graph_from_json(detail::require(j, "D", "square"), "D");
  sq.b = detail::morphism_from_json(detail::require(j, "b", "square"), "b");
  sq.c = detail::morphism_from_json(detail::require(j, "c", "square"), "c");
  sq.f = detail::morphism_from_json(detail::require(j, "f", "square"), "f");
  sq.g = detail::morphism_from_json(detail::require(j, "g", "square"), "g");

  auto check = [](const char* name, const Graph& from, const Graph& to,
                  const Morphism& m) {
    ValidationReport report = validate_morphism(from, to, m);
    if (!report.ok())
      throw ValidationError(std::string("square morphism ") + name,
                            std::move(report));
  };
  check("b", sq.A, sq.B, sq.b);
  check("c", sq.A, sq.C, sq.c);
  check("f", sq.B, sq.D, sq.f);
  check("g", sq.C, sq.D, sq.g);
  return sq;
}

inline std::string serialize_square(const Square& sq) {
  detail::ordered_json out;
  out["A"] = detail::graph_to_json(sq.A);
  out["B"] = detail::graph_to_json(sq.B);
  out["C"] = detail::graph_to_json(sq.C);
  out["D"] = detail::graph_to_json(sq.D);
  out["b"] = detail::morphism_to_json(sq.b);
  out["c"] = detail::morphism_to_json(sq.c);
  out["f"] = detail::morphism_to_json(sq.f);
  out["g"] = detail::morphism_to_json(sq.g);
  return detail::dump(out);
}

// GraphViz rendering: one declaration per node and per edge, ascending id
// order, so output is byte-stable.
inline std::string export_dot(const Graph& g) {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
      if (ch == '"' || ch == '\\') out += '\\';
      out += ch;
    }
    out += '"';
    return out;
  };
  std::string out = "digraph G {\n";
  for (const NodeId& v : g.nodes)
    out += "  " + quote(v.str()) +
           " [label=" + quote(g.node_label.at(v).text) + "];\n";
  for (const EdgeId& e : g.edges)
    out += "  " + quote(g.source.at(e).str()) + " -> " +
           quote(g.target.at(e).str()) +
           " [label=" + quote(g.edge_label.at(e).text) + "];\n";
  out += "}\n";
  return out;
}

}  // namespace dpo
