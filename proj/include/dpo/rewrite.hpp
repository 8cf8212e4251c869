#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>

#include "dpo/errors.hpp"
#include "dpo/graph.hpp"
#include "dpo/match.hpp"
#include "dpo/morphism.hpp"
#include "dpo/rule.hpp"

namespace dpo {

// Outcome of deleting a match image from a host graph. `context` is what is
// left of the host; it contains the match image of the interface, which
// `interface_embedding` points at, and is included back into the host by the
// identity `context_inclusion`.
struct DeletionResult {
  Graph context;                 // the host minus the deleted items
  Morphism interface_embedding;  // rule interface -> context
  Morphism context_inclusion;    // context -> host (identity)
};

// Removes g(left - interface) from the host. The dangling condition is
// exactly what makes the remainder a graph again; a failing match raises
// DanglingViolation before anything is computed.
inline DeletionResult deletion(const Rule& r, const Graph& host,
                               const Morphism& g) {
  if (!check_dangling(r, host, g))
    throw DanglingViolation(
        "deletion: match image leaves host edges without endpoints");

  std::set<NodeId> keep_nodes = host.nodes;
  for (const NodeId& v : r.left.nodes)
    if (!r.interface.nodes.contains(v)) keep_nodes.erase(g.node_map.at(v));

  std::set<EdgeId> keep_edges = host.edges;
  for (const EdgeId& e : r.left.edges)
    if (!r.interface.edges.contains(e)) keep_edges.erase(g.edge_map.at(e));

  DeletionResult out;
  out.context = restrict_graph(host, keep_nodes, keep_edges);
  out.interface_embedding = compose(g, inclusion_left(r));
  out.context_inclusion = identity_morphism(out.context);
  return out;
}

// Outcome of gluing a right-hand side onto a context along the interface.
// `result` carries left/right-marked ids: left for context items, right for
// the freshly created ones.
struct GluingResult {
  Graph result;                // the glued graph
  Morphism rhs_embedding;      // rhs -> result
  Morphism context_embedding;  // context -> result (left marking)
};

// Builds the gluing of `context` and `rhs` over `iface`, given the two
// injective embeddings into_rhs : iface -> rhs and into_context : iface ->
// context. Context items are kept under a left marker; rhs items outside the
// interface image are added under a right marker. An rhs edge may connect a
// new node to an interface one, so its endpoints are resolved case by case:
// an endpoint inside the interface image is redirected to the (left-marked)
// context node the interface maps it to, anything else comes along as a
// right-marked copy.
inline GluingResult glue(const Graph& iface, const Graph& context,
                         const Graph& rhs, const Morphism& into_rhs,
                         const Morphism& into_context) {
  auto invert_on = [](const auto& domain, const auto& map, auto& inverse,
                      const char* what) {
    for (const auto& x : domain) {
      auto image = map.at(x);
      if (!inverse.emplace(image, x).second)
        throw NotInjective(std::string("glue: ") + what +
                           " identifies two interface items at '" +
                           image.str() + "'");
    }
  };

  // Inverses double as injectivity checks for both embeddings.
  std::map<NodeId, NodeId> rhs_preimage_node;
  std::map<EdgeId, EdgeId> rhs_preimage_edge;
  invert_on(iface.nodes, into_rhs.node_map, rhs_preimage_node, "rhs embedding");
  invert_on(iface.edges, into_rhs.edge_map, rhs_preimage_edge, "rhs embedding");

  std::map<NodeId, NodeId> context_image_of;  // iface node -> context node
  {
    std::map<NodeId, NodeId> seen;
    invert_on(iface.nodes, into_context.node_map, seen, "context embedding");
    for (const NodeId& v : iface.nodes)
      context_image_of.emplace(v, into_context.node_map.at(v));
  }
  {
    std::map<EdgeId, EdgeId> seen;
    invert_on(iface.edges, into_context.edge_map, seen, "context embedding");
  }

  GluingResult out;

  // Where a kept rhs node lands in the result.
  auto place_rhs_node = [&](const NodeId& v) -> NodeId {
    auto pre = rhs_preimage_node.find(v);
    if (pre == rhs_preimage_node.end()) return NodeId::right(v);
    return NodeId::left(context_image_of.at(pre->second));
  };

  for (const NodeId& v : context.nodes)
    out.result.add_node(NodeId::left(v), context.node_label.at(v));
  for (const NodeId& v : rhs.nodes)
    if (!rhs_preimage_node.contains(v))
      out.result.add_node(NodeId::right(v), rhs.node_label.at(v));

  for (const EdgeId& e : context.edges)
    out.result.add_edge(EdgeId::left(e), NodeId::left(context.source.at(e)),
                        NodeId::left(context.target.at(e)),
                        context.edge_label.at(e));
  for (const EdgeId& e : rhs.edges) {
    if (rhs_preimage_edge.contains(e)) continue;
    out.result.add_edge(EdgeId::right(e), place_rhs_node(rhs.source.at(e)),
                        place_rhs_node(rhs.target.at(e)),
                        rhs.edge_label.at(e));
  }

  for (const NodeId& v : context.nodes)
    out.context_embedding.node_map.emplace(v, NodeId::left(v));
  for (const EdgeId& e : context.edges)
    out.context_embedding.edge_map.emplace(e, EdgeId::left(e));

  for (const NodeId& v : rhs.nodes)
    out.rhs_embedding.node_map.emplace(v, place_rhs_node(v));
  for (const EdgeId& e : rhs.edges) {
    auto pre = rhs_preimage_edge.find(e);
    if (pre == rhs_preimage_edge.end()) {
      out.rhs_embedding.edge_map.emplace(e, EdgeId::right(e));
    } else {
      out.rhs_embedding.edge_map.emplace(
          e, EdgeId::left(into_context.edge_map.at(pre->second)));
    }
  }

  return out;
}

// Renames a graph onto fresh sequential plain ids ("n0", "n1", ... and "e0",
// "e1", ...), assigned in ascending id order. Returns the renamed graph and
// the bijective renaming morphism. This is how marked gluing output re-enters
// the plain-id world so derivations can chain.
inline std::pair<Graph, Morphism> normalize(const Graph& g) {
  Graph out;
  Morphism renaming;

  std::size_t i = 0;
  for (const NodeId& v : g.nodes) {
    NodeId fresh = node_id("n" + std::to_string(i++));
    renaming.node_map.emplace(v, fresh);
    out.add_node(fresh, g.node_label.at(v));
  }
  std::size_t k = 0;
  for (const EdgeId& e : g.edges) {
    EdgeId fresh = edge_id("e" + std::to_string(k++));
    renaming.edge_map.emplace(e, fresh);
    out.add_edge(fresh, renaming.node_map.at(g.source.at(e)),
                 renaming.node_map.at(g.target.at(e)), g.edge_label.at(e));
  }
  return {std::move(out), std::move(renaming)};
}

// Full record of a single rewrite step: every intermediate object and
// morphism, so the two halves of the step can be re-verified after the fact.
struct DerivationTrace {
  Rule rule;
  Graph host;
  Morphism match;           // rule.left -> host
  DeletionResult deletion;  // host minus the match image
  GluingResult gluing;      // rhs glued onto the context (marked ids)
  Graph result;             // normalized final graph
  Morphism normalizer;      // gluing.result -> result
};

// Applies the rule at the given match: delete, then glue, then normalize.
inline DerivationTrace direct_derive(const Rule& r, const Graph& host,
                                     const Morphism& match) {
  DerivationTrace trace;
  trace.rule = r;
  trace.host = host;
  trace.match = match;
  trace.deletion = deletion(r, host, match);
  trace.gluing = glue(r.interface, trace.deletion.context, r.right,
                      inclusion_right(r), trace.deletion.interface_embedding);
  auto [result, renaming] = normalize(trace.gluing.result);
  trace.result = std::move(result);
  trace.normalizer = std::move(renaming);
  return trace;
}

}  // namespace dpo
