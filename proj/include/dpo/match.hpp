#pragma once

#include <set>
#include <vector>

#include "dpo/graph.hpp"
#include "dpo/morphism.hpp"
#include "dpo/rule.hpp"

namespace dpo {

// An injective occurrence of a rule's left-hand side in a host graph that has
// already passed the dangling check.
struct Match {
  Morphism morphism;        // left -> host
  bool dangling_ok = true;  // recorded result of check_dangling
};

// The dangling condition for an injective occurrence g of r.left in `host`:
// every host edge that survives deletion must keep its endpoints. An edge
// survives iff it is not the image of a deleted left-hand-side edge; a node
// is deleted iff it is the image of a left-hand-side node outside the
// interface. Interface images are untouched by deletion, and injectivity of g
// keeps them disjoint from the deleted images, so edges between interface
// images never dangle.
inline bool check_dangling(const Rule& r, const Graph& host,
                           const Morphism& g) {
  std::set<NodeId> deleted_nodes;
  for (const NodeId& v : r.left.nodes)
    if (!r.interface.nodes.contains(v))
      deleted_nodes.insert(g.node_map.at(v));
  if (deleted_nodes.empty()) return true;

  std::set<EdgeId> deleted_edges;
  for (const EdgeId& e : r.left.edges)
    if (!r.interface.edges.contains(e)) deleted_edges.insert(g.edge_map.at(e));

  for (const EdgeId& e : host.edges) {
    if (deleted_edges.contains(e)) continue;
    if (deleted_nodes.contains(host.source.at(e))) return false;
    if (deleted_nodes.contains(host.target.at(e))) return false;
  }
  return true;
}

// All applicable matches of r in `host`: the injective morphisms from r.left,
// in enumeration order, that pass the dangling check.
inline std::vector<Match> find_matches(const Rule& r, const Graph& host) {
  std::vector<Match> out;
  for (Morphism& g : enumerate_morphisms(r.left, host, MorphismMode::injective)) {
    if (check_dangling(r, host, g)) out.push_back(Match{std::move(g), true});
  }
  return out;
}

}  // namespace dpo
