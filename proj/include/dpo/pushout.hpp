#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dpo/errors.hpp"
#include "dpo/graph.hpp"
#include "dpo/morphism.hpp"
#include "dpo/rewrite.hpp"

namespace dpo {

// A commuting-square candidate:
//
//        b
//    A -----> B
//    |        |
//  c |        | f
//    v        v
//    C -----> D
//        g
//
// Both rewrite halves produce this shape: deletion with (interface, left,
// context, host) and gluing with (interface, rhs, context, glued result).
struct Square {
  Graph A, B, C, D;
  Morphism b;  // A -> B
  Morphism c;  // A -> C
  Morphism f;  // B -> D
  Morphism g;  // C -> D
};

// A competing cospan over the same span: two legs into some apex graph.
struct Cocone {
  Graph apex;
  Morphism from_b;  // B -> apex
  Morphism from_c;  // C -> apex
};

// f . b = g . c, judged on A's node and edge sets.
inline bool check_commutativity(const Square& sq) {
  return agree_on(sq.A, compose(sq.f, sq.b), compose(sq.g, sq.c));
}

// The mediating morphism of a cocone: the unique u : D -> apex with
// u . f = from_b and u . g = from_c, if it exists. Returns nothing when no
// morphism satisfies the triangles and throws NonUniqueMediator when several
// do (which is precisely a failure of the universal property).
inline std::optional<Morphism> mediating_morphism(const Square& sq,
                                                  const Cocone& cc) {
  if (!check_commutativity(sq))
    throw std::invalid_argument("mediating_morphism: square does not commute");
  if (!agree_on(sq.A, compose(cc.from_b, sq.b), compose(cc.from_c, sq.c)))
    throw std::invalid_argument("mediating_morphism: cocone does not commute");

  std::vector<Morphism> hits;
  for (Morphism& u : enumerate_morphisms(sq.D, cc.apex, MorphismMode::all)) {
    if (!agree_on(sq.B, compose(u, sq.f), cc.from_b)) continue;
    if (!agree_on(sq.C, compose(u, sq.g), cc.from_c)) continue;
    hits.push_back(std::move(u));
  }
  if (hits.empty()) return std::nullopt;
  if (hits.size() > 1) throw NonUniqueMediator(hits.size());
  return hits.front();
}

// Isomorphism u : x -> y with u . into_x = into_y for both given morphism
// pairs (legs from `upper` and `lower`), or nothing. This is the uniqueness
// notion for pushout objects: two candidates over the same span are
// interchangeable iff such a u exists.
//
// The triangle equations pin u down on the leg images, so those assignments
// are propagated first; only items outside both images are left to the
// backtracking enumeration (for genuine pushout candidates there are none and
// the search collapses to a single validation).
inline std::optional<Morphism> find_commuting_isomorphism(
    const Graph& x, const Graph& y, const Graph& upper,
    const Morphism& upper_into_x, const Morphism& upper_into_y,
    const Graph& lower, const Morphism& lower_into_x,
    const Morphism& lower_into_y) {
  if (x.nodes.size() != y.nodes.size() || x.edges.size() != y.edges.size())
    return std::nullopt;

  Morphism forced;
  auto force = [](auto& map, const auto& key, const auto& value) {
    auto [it, inserted] = map.emplace(key, value);
    return inserted || it->second == value;
  };
  for (const NodeId& v : upper.nodes)
    if (!force(forced.node_map, upper_into_x.node_map.at(v),
               upper_into_y.node_map.at(v)))
      return std::nullopt;
  for (const NodeId& v : lower.nodes)
    if (!force(forced.node_map, lower_into_x.node_map.at(v),
               lower_into_y.node_map.at(v)))
      return std::nullopt;
  for (const EdgeId& e : upper.edges)
    if (!force(forced.edge_map, upper_into_x.edge_map.at(e),
               upper_into_y.edge_map.at(e)))
      return std::nullopt;
  for (const EdgeId& e : lower.edges)
    if (!force(forced.edge_map, lower_into_x.edge_map.at(e),
               lower_into_y.edge_map.at(e)))
      return std::nullopt;

  if (forced.node_map.size() == x.nodes.size() &&
      forced.edge_map.size() == x.edges.size()) {
    // Legs cover x completely; u is determined, just check it.
    if (!validate_morphism(x, y, forced).ok()) return std::nullopt;
    if (!classify_morphism(x, y, forced).bijective) return std::nullopt;
    return forced;
  }

  // Rare general case: enumerate injective morphisms and keep the first one
  // extending the forced assignments (equal cardinalities make it bijective).
  detail::LabelInterner labels;
  detail::GraphView vx = detail::make_view(x, labels);
  detail::GraphView vy = detail::make_view(y, labels);

  std::optional<Morphism> found;
  detail::for_each_morphism(
      vx, vy, true,
      [&](const std::vector<int>& nodes, const std::vector<int>& edges) {
        Morphism u = detail::assignment_to_morphism(vx, vy, nodes, edges);
        for (const auto& [k, v] : forced.node_map)
          if (u.node_map.at(k) != v) return true;
        for (const auto& [k, v] : forced.edge_map)
          if (u.edge_map.at(k) != v) return true;
        found = std::move(u);
        return false;
      });
  return found;
}

// Decides whether a commuting square is a pushout. Only squares whose span
// legs b and c are injective are decidable this way: the canonical gluing of
// the span is a pushout, and pushout objects are unique up to a commuting
// isomorphism, so the square is a pushout iff such an isomorphism onto D
// exists.
inline bool is_pushout(const Square& sq) {
  auto injective = [](const auto& map) {
    std::set<typename std::decay_t<decltype(map)>::mapped_type> seen;
    for (const auto& [k, v] : map)
      if (!seen.insert(v).second) return false;
    return true;
  };
  if (!injective(sq.b.node_map) || !injective(sq.b.edge_map))
    throw NotInjectiveSpan("is_pushout: span leg b is not injective");
  if (!injective(sq.c.node_map) || !injective(sq.c.edge_map))
    throw NotInjectiveSpan("is_pushout: span leg c is not injective");

  if (!check_commutativity(sq)) return false;

  GluingResult canonical = glue(sq.A, sq.C, sq.B, sq.b, sq.c);
  return find_commuting_isomorphism(canonical.result, sq.D, sq.B,
                                    canonical.rhs_embedding, sq.f, sq.C,
                                    canonical.context_embedding, sq.g)
      .has_value();
}

// Every labelled graph with up to max_nodes nodes ("v0", "v1", ...) and up to
// max_edges edges ("e0", ...), node labels drawn from node_labels and edge
// labels from edge_labels. Parallel edges are generated once per multiset of
// (source, target, label) triples, since edge identities do not matter to the
// callers. Deterministic order: node count, then node labelling, then edge
// count, then edge triples, all ascending.
inline std::vector<Graph> enumerate_graphs(
    std::size_t max_nodes, std::size_t max_edges,
    const std::vector<Label>& node_labels,
    const std::vector<Label>& edge_labels) {
  std::vector<Graph> out;

  for (std::size_t n = 0; n <= max_nodes; ++n) {
    if (n > 0 && node_labels.empty()) break;

    std::vector<std::size_t> labelling(n, 0);
    for (;;) {
      Graph base;
      for (std::size_t i = 0; i < n; ++i)
        base.add_node(node_id("v" + std::to_string(i)),
                      node_labels[labelling[i]]);

      const std::size_t type_count = n * n * edge_labels.size();
      auto decode = [&](std::size_t type, std::size_t slot, Graph& g) {
        std::size_t l = type % edge_labels.size();
        std::size_t rest = type / edge_labels.size();
        std::size_t t = rest % n;
        std::size_t s = rest / n;
        g.add_edge(edge_id("e" + std::to_string(slot)),
                   node_id("v" + std::to_string(s)),
                   node_id("v" + std::to_string(t)), edge_labels[l]);
      };

      out.push_back(base);
      if (type_count > 0) {
        std::vector<std::size_t> types;
        auto emit = [&]() {
          Graph g = base;
          for (std::size_t k = 0; k < types.size(); ++k) decode(types[k], k, g);
          out.push_back(std::move(g));
        };
        auto extend = [&](auto&& self, std::size_t target_len,
                          std::size_t from) -> void {
          if (types.size() == target_len) {
            emit();
            return;
          }
          for (std::size_t ty = from; ty < type_count; ++ty) {
            types.push_back(ty);
            self(self, target_len, ty);
            types.pop_back();
          }
        };
        for (std::size_t m = 1; m <= max_edges; ++m) extend(extend, m, 0);
      }

      // advance the labelling odometer
      std::size_t pos = 0;
      while (pos < n) {
        if (++labelling[pos] < node_labels.size()) break;
        labelling[pos] = 0;
        ++pos;
      }
      if (pos == n) break;
    }
    if (n == 0 && node_labels.empty()) break;
  }
  return out;
}

struct OracleBounds {
  std::size_t max_nodes = 3;
  std::size_t max_edges = 3;
  std::size_t max_candidates = 1'000'000;  // cocones examined before giving up
};

struct OracleOutcome {
  bool holds = true;
  std::optional<Cocone> counterexample;  // first failing cocone when !holds

  explicit operator bool() const { return holds; }
};

namespace detail {

// Composition keys: the image vector of a morphism chain over a fixed item
// ordering. Two chains agree as morphisms iff their keys match.
struct CompositionKey {
  std::vector<NodeId> nodes;
  std::vector<EdgeId> edges;
  friend auto operator<=>(const CompositionKey&, const CompositionKey&) = default;
};

inline CompositionKey restriction_key(const Graph& domain, const Morphism& m) {
  CompositionKey key;
  for (const NodeId& v : domain.nodes) key.nodes.push_back(m.node_map.at(v));
  for (const EdgeId& e : domain.edges) key.edges.push_back(m.edge_map.at(e));
  return key;
}

inline CompositionKey composition_key(const Graph& domain, const Morphism& inner,
                                      const Morphism& outer) {
  CompositionKey key;
  for (const NodeId& v : domain.nodes)
    key.nodes.push_back(outer.node_map.at(inner.node_map.at(v)));
  for (const EdgeId& e : domain.edges)
    key.edges.push_back(outer.edge_map.at(inner.edge_map.at(e)));
  return key;
}

}  // namespace detail

// Memo table for oracle sweeps. One oracle call enumerates every candidate
// apex graph plus up to three morphism sets per apex; a sweep over many
// squares whose corners are drawn from a shared pool repeats those
// enumerations wholesale. The cache keys apex families by (labels, size
// bounds) and morphism sets by (corner graph, apex), filling each cell on
// first use. Reuse across calls is the only effect; verdicts are identical
// to the uncached oracle.
struct OracleCache {
  struct Family {
    std::vector<Label> node_labels, edge_labels;
    std::size_t max_nodes = 0, max_edges = 0;
    std::vector<Graph> apexes;
    std::deque<std::pair<Graph,
                         std::vector<std::optional<std::vector<Morphism>>>>>
        rows;

    const std::vector<Morphism>& morphisms_into(const Graph& corner,
                                                std::size_t apex_index) {
      for (auto& [domain, cells] : rows)
        if (domain == corner) {
          auto& cell = cells[apex_index];
          if (!cell)
            cell = enumerate_morphisms(corner, apexes[apex_index],
                                       MorphismMode::all);
          return *cell;
        }
      rows.emplace_back(corner,
                        std::vector<std::optional<std::vector<Morphism>>>(
                            apexes.size()));
      return morphisms_into(corner, apex_index);
    }
  };

  Family& family(std::vector<Label> node_labels,
                 std::vector<Label> edge_labels, const OracleBounds& bounds) {
    for (Family& f : families)
      if (f.node_labels == node_labels && f.edge_labels == edge_labels &&
          f.max_nodes == bounds.max_nodes && f.max_edges == bounds.max_edges)
        return f;
    Family f;
    f.node_labels = std::move(node_labels);
    f.edge_labels = std::move(edge_labels);
    f.max_nodes = bounds.max_nodes;
    f.max_edges = bounds.max_edges;
    f.apexes = enumerate_graphs(f.max_nodes, f.max_edges, f.node_labels,
                                f.edge_labels);
    families.push_back(std::move(f));
    return families.back();
  }

  // deque: family and row references stay valid while entries get added
  std::deque<Family> families;
};

// Brute-force cross-check of the pushout universal property, quantifying over
// every candidate apex graph up to the given bounds instead of over all
// graphs. Apex labels are the ones occurring in the square plus one fresh
// label per kind (fresh-labelled structure exercises the cases where legs
// cannot reach parts of the apex). For each commuting cocone the number of
// mediating morphisms must be exactly one; the first cocone where it is not
// is returned as the counterexample.
//
// The bound makes this a necessary condition only, so it serves as an
// independent oracle against is_pushout rather than a decision procedure.
// Throws BoundTooLarge once more than max_candidates cocones get examined.
inline OracleOutcome check_universal_property_oracle(const Square& sq,
                                                     const OracleBounds& bounds,
                                                     OracleCache& cache) {
  if (!check_commutativity(sq))
    throw std::invalid_argument(
        "check_universal_property_oracle: square does not commute");

  auto fresh_label = [](const std::set<Label>& used) {
    Label fresh{"*"};
    while (used.contains(fresh)) fresh.text += '*';
    return fresh;
  };
  std::set<Label> node_label_set, edge_label_set;
  for (const Graph* g : {&sq.A, &sq.B, &sq.C, &sq.D}) {
    for (const auto& [v, l] : g->node_label) node_label_set.insert(l);
    for (const auto& [e, l] : g->edge_label) edge_label_set.insert(l);
  }
  node_label_set.insert(fresh_label(node_label_set));
  edge_label_set.insert(fresh_label(edge_label_set));

  OracleCache::Family& fam =
      cache.family({node_label_set.begin(), node_label_set.end()},
                   {edge_label_set.begin(), edge_label_set.end()}, bounds);
  if (fam.apexes.size() > bounds.max_candidates)
    throw BoundTooLarge("check_universal_property_oracle: " +
                        std::to_string(fam.apexes.size()) +
                        " candidate apex graphs exceed the budget");

  std::size_t cocones = 0;
  for (std::size_t ai = 0; ai < fam.apexes.size(); ++ai) {
    const std::vector<Morphism>& ps = fam.morphisms_into(sq.B, ai);
    if (ps.empty()) continue;
    const std::vector<Morphism>& ts = fam.morphisms_into(sq.C, ai);
    if (ts.empty()) continue;

    // Group the C legs by their restriction along the span; a cocone (p, t)
    // commutes exactly when p's restriction lands in t's group. Group
    // members keep enumeration order, so cocones are still examined in the
    // same order as the plain nested scan.
    std::vector<detail::CompositionKey> pb_keys;
    pb_keys.reserve(ps.size());
    for (const Morphism& p : ps)
      pb_keys.push_back(detail::composition_key(sq.A, sq.b, p));
    std::map<detail::CompositionKey, std::vector<std::size_t>> tc_groups;
    for (std::size_t ti = 0; ti < ts.size(); ++ti)
      tc_groups[detail::composition_key(sq.A, sq.c, ts[ti])].push_back(ti);

    // Mediator counting reduces to a key lookup: u satisfies the two
    // triangles for (p, t) iff (u.f restricted to B, u.g restricted to C)
    // equals (p, t) as image vectors. Built only once some cocone commutes;
    // apexes admitting no commuting cocone never enumerate morphisms from D.
    std::map<std::pair<detail::CompositionKey, detail::CompositionKey>,
             std::size_t>
        mediator_count;
    std::vector<detail::CompositionKey> p_keys, t_keys;
    bool tables_ready = false;
    auto build_tables = [&] {
      for (const Morphism& u : fam.morphisms_into(sq.D, ai)) {
        auto key = std::make_pair(detail::composition_key(sq.B, sq.f, u),
                                  detail::composition_key(sq.C, sq.g, u));
        ++mediator_count[key];
      }
      for (const Morphism& p : ps)
        p_keys.push_back(detail::restriction_key(sq.B, p));
      for (const Morphism& t : ts)
        t_keys.push_back(detail::restriction_key(sq.C, t));
      tables_ready = true;
    };

    for (std::size_t pi = 0; pi < ps.size(); ++pi) {
      auto group = tc_groups.find(pb_keys[pi]);
      if (group == tc_groups.end()) continue;
      for (std::size_t ti : group->second) {
        if (++cocones > bounds.max_candidates)
          throw BoundTooLarge(
              "check_universal_property_oracle: cocone budget of " +
              std::to_string(bounds.max_candidates) + " exhausted");
        if (!tables_ready) build_tables();

        auto it = mediator_count.find(std::make_pair(p_keys[pi], t_keys[ti]));
        std::size_t n = it == mediator_count.end() ? 0 : it->second;
        if (n != 1) return {false, Cocone{fam.apexes[ai], ps[pi], ts[ti]}};
      }
    }
  }
  return {true, std::nullopt};
}

inline OracleOutcome check_universal_property_oracle(
    const Square& sq, const OracleBounds& bounds = {}) {
  OracleCache cache;
  return check_universal_property_oracle(sq, bounds, cache);
}

}  // namespace dpo
