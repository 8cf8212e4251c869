#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dpo/errors.hpp"

namespace dpo {

// Side marker attached to identifiers by disjoint-union style constructions
// (see glue() in rewrite.hpp).
enum class Side : std::uint8_t { left = 0, right = 1 };

// Identifier for a node or an edge. A plain id is just a name. Constructions
// that combine two graphs wrap the operands' ids in left/right markers so the
// result stays disjoint by construction; markers nest, so even already-marked
// graphs can be combined again without clashes. normalize() strips markers by
// renaming.
//
// Ids order lexicographically on (markers, name). Every deterministic
// ordering in the library (serialization, enumeration, renaming) derives from
// this ordering.
template <typename KindTag>
class Id {
 public:
  Id() = default;

  static Id plain(std::string name) {
    Id id;
    id.name_ = std::move(name);
    return id;
  }
  static Id left(Id inner) {
    inner.sides_.insert(inner.sides_.begin(), Side::left);
    return inner;
  }
  static Id right(Id inner) {
    inner.sides_.insert(inner.sides_.begin(), Side::right);
    return inner;
  }

  bool marked() const { return !sides_.empty(); }
  const std::vector<Side>& sides() const { return sides_; }
  const std::string& name() const { return name_; }

  std::string str() const {
    std::string out;
    for (Side s : sides_) out += (s == Side::left) ? "L:" : "R:";
    out += name_;
    return out;
  }

  // Inverse of str(). "L:"/"R:" prefixes become markers, the rest is the
  // plain name.
  static Id parse(std::string_view text) {
    Id id;
    for (;;) {
      if (text.substr(0, 2) == "L:") {
        id.sides_.push_back(Side::left);
        text.remove_prefix(2);
      } else if (text.substr(0, 2) == "R:") {
        id.sides_.push_back(Side::right);
        text.remove_prefix(2);
      } else {
        break;
      }
    }
    id.name_ = std::string(text);
    return id;
  }

  friend auto operator<=>(const Id&, const Id&) = default;

 private:
  std::vector<Side> sides_;  // outermost marker first
  std::string name_;
};

struct NodeKind {};
struct EdgeKind {};
using NodeId = Id<NodeKind>;
using EdgeId = Id<EdgeKind>;

inline NodeId node_id(std::string name) { return NodeId::plain(std::move(name)); }
inline EdgeId edge_id(std::string name) { return EdgeId::plain(std::move(name)); }

// Opaque label carried by nodes and edges. Compared by exact equality; the
// engine never interprets the text.
struct Label {
  std::string text;
  friend auto operator<=>(const Label&, const Label&) = default;
};

inline Label label(std::string text) { return Label{std::move(text)}; }

// A finite labelled directed multigraph. Loops and parallel edges are
// allowed. The containers are public and a freshly aggregated value may be
// arbitrary garbage; validate_graph() decides whether the axioms hold.
// Engine operations require validated inputs and never mutate them.
struct Graph {
  std::set<NodeId> nodes;
  std::set<EdgeId> edges;
  std::map<EdgeId, NodeId> source;
  std::map<EdgeId, NodeId> target;
  std::map<NodeId, Label> node_label;
  std::map<EdgeId, Label> edge_label;

  void add_node(NodeId v, Label l) {
    nodes.insert(v);
    node_label[v] = std::move(l);
  }
  void add_node(const std::string& v, const std::string& l) {
    add_node(node_id(v), label(l));
  }

  void add_edge(EdgeId e, NodeId src, NodeId tgt, Label l) {
    edges.insert(e);
    source[e] = std::move(src);
    target[e] = std::move(tgt);
    edge_label[e] = std::move(l);
  }
  void add_edge(const std::string& e, const std::string& src,
                const std::string& tgt, const std::string& l) {
    add_edge(edge_id(e), node_id(src), node_id(tgt), label(l));
  }

  friend bool operator==(const Graph&, const Graph&) = default;
};

// Axiom / clause identifiers used in validation reports.
enum class Clause {
  // graph axioms
  finite_nodes,
  finite_edges,
  source_integrity,
  target_integrity,
  map_domain,
  // morphism clauses
  morph_node_range,
  morph_edge_range,
  source_preserve,
  target_preserve,
  label_preserve,
  mark_preserve,
  // rule clauses
  interface_not_in_left,
  interface_not_in_right,
  label_mismatch,
  source_mismatch,
  target_mismatch,
  invalid_component,
};

inline std::string_view clause_name(Clause c) {
  switch (c) {
    case Clause::finite_nodes: return "finite_nodes";
    case Clause::finite_edges: return "finite_edges";
    case Clause::source_integrity: return "source_integrity";
    case Clause::target_integrity: return "target_integrity";
    case Clause::map_domain: return "map_domain";
    case Clause::morph_node_range: return "morph_node_range";
    case Clause::morph_edge_range: return "morph_edge_range";
    case Clause::source_preserve: return "source_preserve";
    case Clause::target_preserve: return "target_preserve";
    case Clause::label_preserve: return "label_preserve";
    case Clause::mark_preserve: return "mark_preserve";
    case Clause::interface_not_in_left: return "interface_not_in_left";
    case Clause::interface_not_in_right: return "interface_not_in_right";
    case Clause::label_mismatch: return "label_mismatch";
    case Clause::source_mismatch: return "source_mismatch";
    case Clause::target_mismatch: return "target_mismatch";
    case Clause::invalid_component: return "invalid_component";
  }
  return "unknown";
}

struct Violation {
  Clause clause;
  std::string item;    // id or name of the offending element
  std::string detail;  // human-readable explanation
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }

  bool has(Clause c) const {
    for (const auto& v : violations)
      if (v.clause == c) return true;
    return false;
  }
  bool has(Clause c, const std::string& item) const {
    for (const auto& v : violations)
      if (v.clause == c && v.item == item) return true;
    return false;
  }

  std::string str() const {
    if (ok()) return "ok";
    std::ostringstream out;
    for (std::size_t i = 0; i < violations.size(); ++i) {
      if (i) out << '\n';
      out << clause_name(violations[i].clause) << '(' << violations[i].item
          << "): " << violations[i].detail;
    }
    return out.str();
  }
};

// Checks every graph axiom on an arbitrary candidate value. Finiteness holds
// by construction for container-backed graphs, so those two clauses can never
// fire here; they are listed for completeness of the reporting vocabulary.
inline ValidationReport validate_graph(const Graph& g) {
  ValidationReport report;
  auto add = [&](Clause c, std::string item, std::string detail) {
    report.violations.push_back({c, std::move(item), std::move(detail)});
  };

  for (const NodeId& v : g.nodes) {
    if (!g.node_label.contains(v))
      add(Clause::map_domain, v.str(), "node has no label entry");
  }
  for (const auto& [v, l] : g.node_label) {
    if (!g.nodes.contains(v))
      add(Clause::map_domain, v.str(), "node_label entry for unknown node");
  }

  for (const EdgeId& e : g.edges) {
    auto s = g.source.find(e);
    if (s == g.source.end()) {
      add(Clause::map_domain, e.str(), "edge has no source entry");
    } else if (!g.nodes.contains(s->second)) {
      add(Clause::source_integrity, e.str(),
          "source '" + s->second.str() + "' is not a node");
    }
    auto t = g.target.find(e);
    if (t == g.target.end()) {
      add(Clause::map_domain, e.str(), "edge has no target entry");
    } else if (!g.nodes.contains(t->second)) {
      add(Clause::target_integrity, e.str(),
          "target '" + t->second.str() + "' is not a node");
    }
    if (!g.edge_label.contains(e))
      add(Clause::map_domain, e.str(), "edge has no label entry");
  }
  for (const auto& [e, v] : g.source) {
    if (!g.edges.contains(e))
      add(Clause::map_domain, e.str(), "source entry for unknown edge");
  }
  for (const auto& [e, v] : g.target) {
    if (!g.edges.contains(e))
      add(Clause::map_domain, e.str(), "target entry for unknown edge");
  }
  for (const auto& [e, l] : g.edge_label) {
    if (!g.edges.contains(e))
      add(Clause::map_domain, e.str(), "edge_label entry for unknown edge");
  }
  return report;
}

inline Graph empty_graph() { return Graph{}; }

// The subgraph induced by (keep_nodes, keep_edges). Both must be subsets of
// the graph's sets, and every kept edge must keep both endpoints; otherwise
// the result would not be a graph and DanglingRestriction is thrown.
inline Graph restrict_graph(const Graph& g, const std::set<NodeId>& keep_nodes,
                            const std::set<EdgeId>& keep_edges) {
  for (const NodeId& v : keep_nodes) {
    if (!g.nodes.contains(v))
      throw std::invalid_argument("restrict_graph: '" + v.str() +
                                  "' is not a node of the graph");
  }
  for (const EdgeId& e : keep_edges) {
    if (!g.edges.contains(e))
      throw std::invalid_argument("restrict_graph: '" + e.str() +
                                  "' is not an edge of the graph");
  }
  for (const EdgeId& e : keep_edges) {
    if (!keep_nodes.contains(g.source.at(e)) ||
        !keep_nodes.contains(g.target.at(e)))
      throw DanglingRestriction(e.str());
  }

  Graph out;
  for (const NodeId& v : keep_nodes) out.add_node(v, g.node_label.at(v));
  for (const EdgeId& e : keep_edges)
    out.add_edge(e, g.source.at(e), g.target.at(e), g.edge_label.at(e));
  return out;
}

}  // namespace dpo
