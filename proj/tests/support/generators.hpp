#pragma once

// Seeded random instance generators shared by the property tests and the
// acceptance suite. All randomness flows through an explicitly seeded
// mt19937_64 so failures reproduce.

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "dpo/dpo.hpp"

namespace testgen {

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t bound) {
  return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
}

inline bool chance(Rng& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

inline const std::vector<std::string>& default_node_labels() {
  static const std::vector<std::string> labels{"A", "B"};
  return labels;
}

inline const std::vector<std::string>& default_edge_labels() {
  static const std::vector<std::string> labels{"x", "y"};
  return labels;
}

// Random graph with node ids <prefix>0.. and edge ids <prefix>e0.. Edge
// endpoints are drawn uniformly, so loops and parallel edges occur.
inline dpo::Graph random_graph(Rng& rng, std::size_t max_nodes,
                               std::size_t max_edges,
                               const std::string& prefix = "n") {
  const auto& nl = default_node_labels();
  const auto& el = default_edge_labels();

  dpo::Graph g;
  std::size_t n = pick(rng, max_nodes + 1);
  std::vector<dpo::NodeId> nodes;
  for (std::size_t i = 0; i < n; ++i) {
    dpo::NodeId v = dpo::node_id(prefix + std::to_string(i));
    g.add_node(v, dpo::label(nl[pick(rng, nl.size())]));
    nodes.push_back(v);
  }
  if (!nodes.empty()) {
    std::size_t m = pick(rng, max_edges + 1);
    for (std::size_t i = 0; i < m; ++i)
      g.add_edge(dpo::edge_id(prefix + "e" + std::to_string(i)),
                 nodes[pick(rng, nodes.size())], nodes[pick(rng, nodes.size())],
                 dpo::label(el[pick(rng, el.size())]));
  }
  return g;
}

// A copy of g on fresh ids <prefix>0../<prefix>e0.. plus the renaming
// morphism g -> copy.
inline std::pair<dpo::Graph, dpo::Morphism> renamed_copy(
    const dpo::Graph& g, const std::string& prefix) {
  dpo::Graph copy;
  dpo::Morphism renaming;
  std::size_t i = 0;
  for (const dpo::NodeId& v : g.nodes) {
    dpo::NodeId fresh = dpo::node_id(prefix + std::to_string(i++));
    renaming.node_map.emplace(v, fresh);
    copy.add_node(fresh, g.node_label.at(v));
  }
  std::size_t k = 0;
  for (const dpo::EdgeId& e : g.edges) {
    dpo::EdgeId fresh = dpo::edge_id(prefix + "e" + std::to_string(k++));
    renaming.edge_map.emplace(e, fresh);
    copy.add_edge(fresh, renaming.node_map.at(g.source.at(e)),
                  renaming.node_map.at(g.target.at(e)), g.edge_label.at(e));
  }
  return {std::move(copy), std::move(renaming)};
}

// Grows g in place: extra nodes <prefix>0.. and edges <prefix>e0.. attached
// anywhere, including onto the pre-existing part.
inline void grow(Rng& rng, dpo::Graph& g, std::size_t extra_nodes,
                 std::size_t extra_edges, const std::string& prefix) {
  const auto& nl = default_node_labels();
  const auto& el = default_edge_labels();

  for (std::size_t i = 0; i < extra_nodes; ++i)
    g.add_node(dpo::node_id(prefix + std::to_string(i)),
               dpo::label(nl[pick(rng, nl.size())]));

  std::vector<dpo::NodeId> nodes(g.nodes.begin(), g.nodes.end());
  if (nodes.empty()) return;
  for (std::size_t i = 0; i < extra_edges; ++i)
    g.add_edge(dpo::edge_id(prefix + "e" + std::to_string(i)),
               nodes[pick(rng, nodes.size())], nodes[pick(rng, nodes.size())],
               dpo::label(el[pick(rng, el.size())]));
}

// An injective span: two embeddings of a shared graph into independently
// grown copies. Arguments of glue() in its parameter order.
struct SpanInstance {
  dpo::Graph iface;
  dpo::Graph context;
  dpo::Graph rhs;
  dpo::Morphism into_rhs;      // iface -> rhs, injective
  dpo::Morphism into_context;  // iface -> context, injective
};

inline SpanInstance random_span(Rng& rng, std::size_t iface_nodes = 3,
                                std::size_t iface_edges = 2,
                                std::size_t growth = 3) {
  SpanInstance span;
  span.iface = random_graph(rng, iface_nodes, iface_edges, "k");

  auto [rhs, into_rhs] = renamed_copy(span.iface, "b");
  grow(rng, rhs, pick(rng, growth + 1), pick(rng, growth + 1), "bx");
  span.rhs = std::move(rhs);
  span.into_rhs = std::move(into_rhs);

  auto [context, into_context] = renamed_copy(span.iface, "c");
  grow(rng, context, pick(rng, growth + 1), pick(rng, growth + 1), "cx");
  span.context = std::move(context);
  span.into_context = std::move(into_context);
  return span;
}

// Random rule built over a shared interface by id sharing: both sides start
// as the interface itself and grow independently.
inline dpo::Rule random_rule(Rng& rng, std::size_t iface_nodes = 2,
                             std::size_t iface_edges = 1,
                             std::size_t growth = 2) {
  dpo::Rule r;
  r.interface = random_graph(rng, iface_nodes, iface_edges, "k");
  r.left = r.interface;
  grow(rng, r.left, pick(rng, growth + 1), pick(rng, growth + 1), "l");
  r.right = r.interface;
  grow(rng, r.right, pick(rng, growth + 1), pick(rng, growth + 1), "r");
  return r;
}

// Host graph containing at least one injective occurrence of r.left (the
// planted embedding is returned too; noise may create further occurrences or
// dangling hazards around the planted one).
inline std::pair<dpo::Graph, dpo::Morphism> host_with_planted_match(
    Rng& rng, const dpo::Rule& r, std::size_t noise_nodes = 2,
    std::size_t noise_edges = 2) {
  auto [host, planted] = renamed_copy(r.left, "h");
  grow(rng, host, pick(rng, noise_nodes + 1), pick(rng, noise_edges + 1), "z");
  return {std::move(host), std::move(planted)};
}

}  // namespace testgen
