#pragma once

#include <string>
#include <utility>

#include "dpo/graph.hpp"
#include "dpo/morphism.hpp"

namespace dpo {

// A rewrite rule: left-hand side, interface, right-hand side. The interface
// is embedded in both sides by sharing identifiers, so the two inclusions are
// identity morphisms and never need to be stored. Items of `left` outside the
// interface are deleted by an application; items of `right` outside the
// interface are created fresh.
struct Rule {
  Graph left;
  Graph interface;
  Graph right;

  friend bool operator==(const Rule&, const Rule&) = default;
};

// Rule validity: all three graphs are valid, every interface item occurs in
// both sides, and the shared items agree on labels and on edge endpoints.
inline ValidationReport validate_rule(const Rule& r) {
  ValidationReport report;
  auto add = [&](Clause c, std::string item, std::string detail) {
    report.violations.push_back({c, std::move(item), std::move(detail)});
  };

  auto component = [&](const Graph& g, const char* name) {
    ValidationReport inner = validate_graph(g);
    for (auto& v : inner.violations)
      add(Clause::invalid_component, name,
          std::string(clause_name(v.clause)) + "(" + v.item + "): " + v.detail);
  };
  component(r.left, "left");
  component(r.interface, "interface");
  component(r.right, "right");

  auto check_side = [&](const Graph& side, Clause missing, const char* name) {
    for (const NodeId& v : r.interface.nodes) {
      if (!side.nodes.contains(v)) {
        add(missing, v.str(), std::string("interface node missing from ") + name);
        continue;
      }
      if (r.interface.node_label.contains(v) && side.node_label.contains(v) &&
          r.interface.node_label.at(v) != side.node_label.at(v))
        add(Clause::label_mismatch, v.str(),
            std::string("interface node label differs in ") + name);
    }
    for (const EdgeId& e : r.interface.edges) {
      if (!side.edges.contains(e)) {
        add(missing, e.str(), std::string("interface edge missing from ") + name);
        continue;
      }
      if (r.interface.source.contains(e) && side.source.contains(e) &&
          r.interface.source.at(e) != side.source.at(e))
        add(Clause::source_mismatch, e.str(),
            std::string("interface edge source differs in ") + name);
      if (r.interface.target.contains(e) && side.target.contains(e) &&
          r.interface.target.at(e) != side.target.at(e))
        add(Clause::target_mismatch, e.str(),
            std::string("interface edge target differs in ") + name);
      if (r.interface.edge_label.contains(e) && side.edge_label.contains(e) &&
          r.interface.edge_label.at(e) != side.edge_label.at(e))
        add(Clause::label_mismatch, e.str(),
            std::string("interface edge label differs in ") + name);
    }
  };
  check_side(r.left, Clause::interface_not_in_left, "left");
  check_side(r.right, Clause::interface_not_in_right, "right");

  return report;
}

// The embedding of the interface into the left-hand side. Because interface
// items keep their ids, this is the identity map on the interface.
inline Morphism inclusion_left(const Rule& r) {
  return identity_morphism(r.interface);
}

// Likewise for the right-hand side.
inline Morphism inclusion_right(const Rule& r) {
  return identity_morphism(r.interface);
}

// Swapping the sides yields the rule that undoes this one.
inline Rule invert_rule(const Rule& r) {
  return Rule{r.right, r.interface, r.left};
}

}  // namespace dpo
