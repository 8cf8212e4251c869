#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dpo/errors.hpp"
#include "dpo/graph.hpp"

namespace dpo {

// A graph morphism: one finite map per kind, defined on exactly the node and
// edge set of its source graph. The source and target graphs are not part of
// the value; validate_morphism() checks a map pair against a concrete pair of
// graphs.
struct Morphism {
  std::map<NodeId, NodeId> node_map;
  std::map<EdgeId, EdgeId> edge_map;

  friend bool operator==(const Morphism&, const Morphism&) = default;
};

inline Morphism identity_morphism(const Graph& g) {
  Morphism m;
  for (const NodeId& v : g.nodes) m.node_map.emplace(v, v);
  for (const EdgeId& e : g.edges) m.edge_map.emplace(e, e);
  return m;
}

// Morphism validity: both maps cover their domain exactly, land inside the
// codomain graph, commute with source/target, and preserve node labels
// (label_preserve) and edge labels (mark_preserve).
inline ValidationReport validate_morphism(const Graph& g, const Graph& h,
                                          const Morphism& f) {
  ValidationReport report;
  auto add = [&](Clause c, std::string item, std::string detail) {
    report.violations.push_back({c, std::move(item), std::move(detail)});
  };

  for (const NodeId& v : g.nodes) {
    if (!f.node_map.contains(v))
      add(Clause::map_domain, v.str(), "node has no image");
  }
  for (const auto& [v, w] : f.node_map) {
    if (!g.nodes.contains(v)) {
      add(Clause::map_domain, v.str(), "image given for unknown node");
      continue;
    }
    if (!h.nodes.contains(w)) {
      add(Clause::morph_node_range, v.str(),
          "image '" + w.str() + "' is not a node of the codomain");
      continue;
    }
    auto gl = g.node_label.find(v);
    auto hl = h.node_label.find(w);
    if (gl != g.node_label.end() && hl != h.node_label.end() &&
        gl->second != hl->second)
      add(Clause::label_preserve, v.str(),
          "node label '" + gl->second.text + "' maps onto '" +
              hl->second.text + "'");
  }

  for (const EdgeId& e : g.edges) {
    if (!f.edge_map.contains(e))
      add(Clause::map_domain, e.str(), "edge has no image");
  }
  for (const auto& [e, d] : f.edge_map) {
    if (!g.edges.contains(e)) {
      add(Clause::map_domain, e.str(), "image given for unknown edge");
      continue;
    }
    if (!h.edges.contains(d)) {
      add(Clause::morph_edge_range, e.str(),
          "image '" + d.str() + "' is not an edge of the codomain");
      continue;
    }

    auto gs = g.source.find(e);
    auto hs = h.source.find(d);
    if (gs != g.source.end() && hs != h.source.end()) {
      auto img = f.node_map.find(gs->second);
      if (img != f.node_map.end() && img->second != hs->second)
        add(Clause::source_preserve, e.str(),
            "source maps to '" + img->second.str() + "' but image edge starts at '" +
                hs->second.str() + "'");
    }
    auto gt = g.target.find(e);
    auto ht = h.target.find(d);
    if (gt != g.target.end() && ht != h.target.end()) {
      auto img = f.node_map.find(gt->second);
      if (img != f.node_map.end() && img->second != ht->second)
        add(Clause::target_preserve, e.str(),
            "target maps to '" + img->second.str() + "' but image edge ends at '" +
                ht->second.str() + "'");
    }

    auto gl = g.edge_label.find(e);
    auto hl = h.edge_label.find(d);
    if (gl != g.edge_label.end() && hl != h.edge_label.end() &&
        gl->second != hl->second)
      add(Clause::mark_preserve, e.str(),
          "edge label '" + gl->second.text + "' maps onto '" + hl->second.text +
              "'");
  }
  return report;
}

// g after f. Defined exactly on f's domain; every f-image must be mapped by
// g, otherwise DomainMismatch.
inline Morphism compose(const Morphism& g, const Morphism& f) {
  Morphism out;
  for (const auto& [v, w] : f.node_map) {
    auto it = g.node_map.find(w);
    if (it == g.node_map.end())
      throw DomainMismatch("compose: node '" + w.str() +
                           "' is not in the domain of the outer morphism");
    out.node_map.emplace(v, it->second);
  }
  for (const auto& [e, d] : f.edge_map) {
    auto it = g.edge_map.find(d);
    if (it == g.edge_map.end())
      throw DomainMismatch("compose: edge '" + d.str() +
                           "' is not in the domain of the outer morphism");
    out.edge_map.emplace(e, it->second);
  }
  return out;
}

struct MorphismClass {
  bool injective = false;
  bool surjective = false;
  bool bijective = false;
  bool inclusion = false;
};

// Classifies a valid morphism g -> h. "inclusion" means both maps are
// identities on their domain.
inline MorphismClass classify_morphism(const Graph& g, const Graph& h,
                                       const Morphism& f) {
  MorphismClass cls;

  std::set<NodeId> node_image;
  std::set<EdgeId> edge_image;
  for (const auto& [v, w] : f.node_map) node_image.insert(w);
  for (const auto& [e, d] : f.edge_map) edge_image.insert(d);

  cls.injective = node_image.size() == f.node_map.size() &&
                  edge_image.size() == f.edge_map.size();
  cls.surjective = node_image == h.nodes && edge_image == h.edges;
  cls.bijective = cls.injective && cls.surjective;

  cls.inclusion = true;
  for (const auto& [v, w] : f.node_map)
    if (v != w) {
      cls.inclusion = false;
      break;
    }
  if (cls.inclusion)
    for (const auto& [e, d] : f.edge_map)
      if (e != d) {
        cls.inclusion = false;
        break;
      }
  return cls;
}

// Morphism equality in proofs about squares is always relative to a source
// graph: two morphisms are interchangeable iff they agree on its node and
// edge sets. Entries outside the domain never matter.
inline bool agree_on(const Graph& domain, const Morphism& a,
                     const Morphism& b) {
  for (const NodeId& v : domain.nodes) {
    auto ia = a.node_map.find(v);
    auto ib = b.node_map.find(v);
    if (ia == a.node_map.end() || ib == b.node_map.end() ||
        ia->second != ib->second)
      return false;
  }
  for (const EdgeId& e : domain.edges) {
    auto ia = a.edge_map.find(e);
    auto ib = b.edge_map.find(e);
    if (ia == a.edge_map.end() || ib == b.edge_map.end() ||
        ia->second != ib->second)
      return false;
  }
  return true;
}

enum class MorphismMode { all, injective };

namespace detail {

// Shared label table so two views agree on the integer codes.
struct LabelInterner {
  std::map<Label, int> codes;
  int intern(const Label& l) {
    auto [it, inserted] = codes.try_emplace(l, static_cast<int>(codes.size()));
    return it->second;
  }
};

// Index-based picture of a validated graph, for the enumeration inner loops.
struct GraphView {
  std::vector<NodeId> node_ids;  // ascending
  std::vector<EdgeId> edge_ids;  // ascending
  std::vector<int> src, tgt;     // per edge, index into node_ids
  std::vector<int> node_label, edge_label;
  std::vector<int> out_degree, in_degree;

  int node_count() const { return static_cast<int>(node_ids.size()); }
  int edge_count() const { return static_cast<int>(edge_ids.size()); }
};

inline GraphView make_view(const Graph& g, LabelInterner& labels) {
  GraphView view;
  view.node_ids.assign(g.nodes.begin(), g.nodes.end());
  view.edge_ids.assign(g.edges.begin(), g.edges.end());

  std::map<NodeId, int> index;
  for (int i = 0; i < view.node_count(); ++i) index.emplace(view.node_ids[i], i);

  view.node_label.reserve(view.node_ids.size());
  for (const NodeId& v : view.node_ids)
    view.node_label.push_back(labels.intern(g.node_label.at(v)));

  view.out_degree.assign(view.node_ids.size(), 0);
  view.in_degree.assign(view.node_ids.size(), 0);
  for (const EdgeId& e : view.edge_ids) {
    int s = index.at(g.source.at(e));
    int t = index.at(g.target.at(e));
    view.src.push_back(s);
    view.tgt.push_back(t);
    view.edge_label.push_back(labels.intern(g.edge_label.at(e)));
    ++view.out_degree[s];
    ++view.in_degree[t];
  }
  return view;
}

// Backtracking core. Visits every morphism g -> h (all label-, source- and
// target-preserving map pairs; additionally injective per kind when
// `injective` is set) in lexicographic order of the assignment vectors, nodes
// first. The callback gets index vectors into h's id arrays and returns false
// to stop the walk; the function returns false iff some callback stopped it.
template <typename Callback>
bool for_each_morphism(const GraphView& g, const GraphView& h, bool injective,
                       Callback&& visit) {
  const int gn = g.node_count(), ge = g.edge_count();
  const int hn = h.node_count(), he = h.edge_count();

  std::vector<int> node_assign(gn, -1), edge_assign(ge, -1);
  std::vector<char> node_used(hn, 0), edge_used(he, 0);

  auto edges_from = [&](auto&& self, int k) -> bool {
    if (k == ge) return visit(node_assign, edge_assign);
    for (int d = 0; d < he; ++d) {
      if (injective && edge_used[d]) continue;
      if (h.edge_label[d] != g.edge_label[k]) continue;
      if (h.src[d] != node_assign[g.src[k]]) continue;
      if (h.tgt[d] != node_assign[g.tgt[k]]) continue;
      edge_assign[k] = d;
      edge_used[d] = 1;
      bool keep_going = self(self, k + 1);
      edge_used[d] = 0;
      if (!keep_going) return false;
    }
    edge_assign[k] = -1;
    return true;
  };

  auto nodes_from = [&](auto&& self, int i) -> bool {
    if (i == gn) return edges_from(edges_from, 0);
    for (int j = 0; j < hn; ++j) {
      if (injective && node_used[j]) continue;
      if (h.node_label[j] != g.node_label[i]) continue;
      // A node with outgoing (incoming) edges cannot map onto one without
      // any; with injective edges the image needs at least as many.
      if (injective) {
        if (h.out_degree[j] < g.out_degree[i]) continue;
        if (h.in_degree[j] < g.in_degree[i]) continue;
      } else {
        if (g.out_degree[i] > 0 && h.out_degree[j] == 0) continue;
        if (g.in_degree[i] > 0 && h.in_degree[j] == 0) continue;
      }
      node_assign[i] = j;
      node_used[j] = 1;
      bool keep_going = self(self, i + 1);
      node_used[j] = 0;
      if (!keep_going) return false;
    }
    node_assign[i] = -1;
    return true;
  };

  return nodes_from(nodes_from, 0);
}

inline Morphism assignment_to_morphism(const GraphView& g, const GraphView& h,
                                       const std::vector<int>& node_assign,
                                       const std::vector<int>& edge_assign) {
  Morphism m;
  for (int i = 0; i < g.node_count(); ++i)
    m.node_map.emplace(g.node_ids[i], h.node_ids[node_assign[i]]);
  for (int k = 0; k < g.edge_count(); ++k)
    m.edge_map.emplace(g.edge_ids[k], h.edge_ids[edge_assign[k]]);
  return m;
}

}  // namespace detail

// All morphisms g -> h, in a deterministic order (lexicographic on the image
// assignments of the ascending node list, then the ascending edge list). Mode
// `injective` keeps exactly those that are injective per kind.
inline std::vector<Morphism> enumerate_morphisms(const Graph& g, const Graph& h,
                                                 MorphismMode mode) {
  detail::LabelInterner labels;
  detail::GraphView vg = detail::make_view(g, labels);
  detail::GraphView vh = detail::make_view(h, labels);

  std::vector<Morphism> out;
  detail::for_each_morphism(
      vg, vh, mode == MorphismMode::injective,
      [&](const std::vector<int>& nodes, const std::vector<int>& edges) {
        out.push_back(detail::assignment_to_morphism(vg, vh, nodes, edges));
        return true;
      });
  return out;
}

// First isomorphism g -> h in enumeration order, if any. Cardinalities and
// label multisets are compared first so the search only runs on plausible
// pairs; an injective morphism between equal-size graphs is automatically
// bijective.
inline std::optional<Morphism> find_isomorphism(const Graph& g,
                                                const Graph& h) {
  if (g.nodes.size() != h.nodes.size() || g.edges.size() != h.edges.size())
    return std::nullopt;

  auto label_multiset = [](const auto& m) {
    std::vector<Label> out;
    for (const auto& [id, l] : m) out.push_back(l);
    std::sort(out.begin(), out.end());
    return out;
  };
  if (label_multiset(g.node_label) != label_multiset(h.node_label))
    return std::nullopt;
  if (label_multiset(g.edge_label) != label_multiset(h.edge_label))
    return std::nullopt;

  detail::LabelInterner labels;
  detail::GraphView vg = detail::make_view(g, labels);
  detail::GraphView vh = detail::make_view(h, labels);

  std::optional<Morphism> found;
  detail::for_each_morphism(
      vg, vh, true,
      [&](const std::vector<int>& nodes, const std::vector<int>& edges) {
        found = detail::assignment_to_morphism(vg, vh, nodes, edges);
        return false;
      });
  return found;
}

}  // namespace dpo
