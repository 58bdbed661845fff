#pragma once

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "modcomp/canonical.hpp"
#include "modcomp/universe.hpp"

namespace modcomp {

/// Witnessed specialization: the generic graph (target) is obtained from the
/// special graph (source) by contracting an edge subset. All indices refer to
/// the canonical labelings of both sides.
struct ContractionMap {
  std::string source_encoding;          // the special graph G'
  std::string target_encoding;          // the generic graph G
  std::vector<int> contracted_edges;    // indices into the canonical source edge list
  std::vector<std::vector<int>> fibers; // fibers[target vertex] = sorted source vertices
};

namespace detail {

struct RawContraction {
  DualGraph graph;
  std::vector<int> vertex_image;  // source vertex -> result vertex
  std::vector<int> edge_image;    // source edge -> result edge, -1 if contracted
};

/// Contract an edge subset in one pass. Fibers are the connected components
/// of the chosen subgraph; each fiber's genus gains its first Betti number,
/// which handles loops and parallel edges uniformly.
inline RawContraction contract_raw(const DualGraph& g, const std::vector<int>& edge_indices) {
  const int n = g.vertex_count();
  std::vector<bool> chosen(g.edges.size(), false);
  for (int e : edge_indices) {
    if (e < 0 || e >= g.edge_count()) throw rejected_input("contract: edge index out of range");
    chosen[e] = true;
  }
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int e = 0; e < g.edge_count(); ++e)
    if (chosen[e]) parent[find(g.edges[e].u)] = find(g.edges[e].v);

  // fibers ordered by smallest member
  std::map<int, int> fiber_index;
  std::vector<int> vertex_image(n);
  for (int v = 0; v < n; ++v) {
    int root = find(v);
    auto [it, fresh] = fiber_index.emplace(root, static_cast<int>(fiber_index.size()));
    vertex_image[v] = it->second;
    (void)fresh;
  }

  RawContraction out;
  out.vertex_image = vertex_image;
  out.graph.ambient_genus = g.ambient_genus;
  out.graph.marking_count = g.marking_count;
  out.graph.vertices.resize(fiber_index.size());
  std::vector<int> fiber_sizes(fiber_index.size(), 0);
  std::vector<int> fiber_edges(fiber_index.size(), 0);
  for (int v = 0; v < n; ++v) {
    VertexLabel& t = out.graph.vertices[vertex_image[v]];
    t.genus += g.vertices[v].genus;
    t.markings.insert(t.markings.end(), g.vertices[v].markings.begin(),
                      g.vertices[v].markings.end());
    ++fiber_sizes[vertex_image[v]];
  }
  for (int e = 0; e < g.edge_count(); ++e)
    if (chosen[e]) ++fiber_edges[vertex_image[g.edges[e].u]];
  for (std::size_t f = 0; f < fiber_index.size(); ++f) {
    out.graph.vertices[f].genus += fiber_edges[f] - fiber_sizes[f] + 1;
    std::sort(out.graph.vertices[f].markings.begin(), out.graph.vertices[f].markings.end());
  }

  // surviving edges, with a stable source->result index map
  std::vector<std::pair<GraphEdge, int>> kept;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (chosen[e]) continue;
    kept.emplace_back(make_edge(vertex_image[g.edges[e].u], vertex_image[g.edges[e].v]), e);
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  out.edge_image.assign(g.edges.size(), -1);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    out.graph.edges.push_back(kept[i].first);
    out.edge_image[kept[i].second] = static_cast<int>(i);
  }
  return out;
}

/// Stable bijection from raw edge indices to the canonical graph's edge
/// indices, under a vertex relabeling. Equal edges are matched in raw order.
inline std::vector<int> edge_relabeling(const DualGraph& g, const std::vector<int>& perm) {
  std::vector<std::pair<GraphEdge, int>> mapped;
  mapped.reserve(g.edges.size());
  for (int e = 0; e < g.edge_count(); ++e)
    mapped.emplace_back(make_edge(perm[g.edges[e].u], perm[g.edges[e].v]), e);
  std::stable_sort(mapped.begin(), mapped.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<int> out(g.edges.size());
  for (std::size_t i = 0; i < mapped.size(); ++i) out[mapped[i].second] = static_cast<int>(i);
  return out;
}

inline std::string fiber_signature(const std::vector<std::vector<int>>& fibers) {
  std::string s;
  for (const auto& f : fibers) {
    s += "[";
    for (int v : f) s += std::to_string(v) + ",";
    s += "]";
  }
  return s;
}

/// Orbit representative of a fiber structure under Aut(target) x Aut(source):
/// distinct representatives are genuinely different specializations.
inline std::string fiber_orbit_key(const std::vector<std::vector<int>>& fibers,
                                   const std::vector<std::vector<int>>& target_auts,
                                   const std::vector<std::vector<int>>& source_auts) {
  std::string best;
  for (const auto& alpha : target_auts) {
    for (const auto& beta : source_auts) {
      std::vector<std::vector<int>> moved(fibers.size());
      for (std::size_t v = 0; v < fibers.size(); ++v) {
        std::vector<int> img;
        img.reserve(fibers[v].size());
        for (int u : fibers[v]) img.push_back(beta[u]);
        std::sort(img.begin(), img.end());
        moved[alpha[v]] = std::move(img);
      }
      std::string key = fiber_signature(moved);
      if (best.empty() || key < best) best = std::move(key);
    }
  }
  return best;
}

}  // namespace detail

/// Contracts an edge subset of `source` (given in its own labeling). Non-loop
/// contractions merge endpoints (genera add, markings union); contracting a
/// loop trades it for a genus increment. Returns the canonical target and the
/// witnessing map in canonical coordinates.
inline std::pair<CanonicalForm, ContractionMap> contract(const DualGraph& source,
                                                         const std::vector<int>& edge_indices) {
  const CanonicalForm src = canonicalize(source);
  const std::vector<int> src_edge_perm = detail::edge_relabeling(source, src.relabeling);
  std::vector<int> canon_edges;
  canon_edges.reserve(edge_indices.size());
  for (int e : edge_indices) {
    if (e < 0 || e >= source.edge_count()) throw rejected_input("contract: edge index out of range");
    canon_edges.push_back(src_edge_perm[e]);
  }
  std::sort(canon_edges.begin(), canon_edges.end());
  canon_edges.erase(std::unique(canon_edges.begin(), canon_edges.end()), canon_edges.end());

  detail::RawContraction raw = detail::contract_raw(src.graph, canon_edges);
  const CanonicalForm tgt = canonicalize(raw.graph);
  ContractionMap m;
  m.source_encoding = src.encoding;
  m.target_encoding = tgt.encoding;
  m.contracted_edges = canon_edges;
  m.fibers.assign(tgt.graph.vertex_count(), {});
  for (int v = 0; v < src.graph.vertex_count(); ++v)
    m.fibers[tgt.relabeling[raw.vertex_image[v]]].push_back(v);
  for (auto& f : m.fibers) std::sort(f.begin(), f.end());
  return {tgt, m};
}

/// One outcome class of contracting a single edge: a canonical target plus
/// every witnessing single-edge map landing on it with the same fiber shape.
struct GenerizationClass {
  CanonicalForm target;
  std::vector<ContractionMap> maps;
};

inline std::vector<GenerizationClass> one_step_generizations(const DualGraph& source) {
  const CanonicalForm src = canonicalize(source);
  const auto source_auts = automorphisms(src.graph);
  std::map<std::string, GenerizationClass> classes;
  for (int e = 0; e < src.graph.edge_count(); ++e) {
    auto [tgt, m] = contract(src.graph, {e});
    const std::string key =
        tgt.encoding + "#" +
        detail::fiber_orbit_key(m.fibers, automorphisms(tgt.graph), source_auts);
    auto [it, fresh] = classes.emplace(key, GenerizationClass{});
    if (fresh) it->second.target = tgt;
    it->second.maps.push_back(std::move(m));
  }
  std::vector<GenerizationClass> out;
  for (auto& [key, cls] : classes) out.push_back(std::move(cls));
  return out;
}

/// All contraction maps realizing `target` as a generization of `source`,
/// one per fiber structure up to Aut(target) x Aut(source). Empty means no
/// specialization relates the two graphs.
inline std::vector<ContractionMap> specialization_maps(const DualGraph& target,
                                                       const DualGraph& source) {
  if (target.ambient_genus != source.ambient_genus ||
      target.marking_count != source.marking_count)
    throw rejected_input("specialization_maps: mismatched (g,n)");
  const CanonicalForm tgt = canonicalize(target);
  const CanonicalForm src = canonicalize(source);
  if (src.graph.edge_count() < tgt.graph.edge_count()) return {};

  const auto source_auts = automorphisms(src.graph);
  std::vector<std::vector<int>> target_auts;  // computed lazily on first hit
  std::map<std::string, ContractionMap> by_orbit;
  const int ne = src.graph.edge_count();
  for (unsigned long mask = 0; mask < (1ul << ne); ++mask) {
    if (std::popcount(mask) != src.graph.edge_count() - tgt.graph.edge_count()) continue;
    std::vector<int> subset;
    for (int e = 0; e < ne; ++e)
      if (mask & (1ul << e)) subset.push_back(e);
    auto [res, m] = contract(src.graph, subset);
    if (res.encoding != tgt.encoding) continue;
    if (target_auts.empty()) target_auts = automorphisms(tgt.graph);
    const std::string key = detail::fiber_orbit_key(m.fibers, target_auts, source_auts);
    by_orbit.emplace(key, std::move(m));
  }
  std::vector<ContractionMap> out;
  for (auto& [key, m] : by_orbit) out.push_back(std::move(m));
  return out;
}

/// The complete witnessed specialization relation over a universe, keyed by
/// (target index, source index). Reflexive entries are the identity maps.
struct SpecializationRelation {
  int g = 0;
  int n = 0;
  std::map<std::pair<int, int>, std::vector<ContractionMap>> maps;

  const std::vector<ContractionMap>* find(int target, int source) const {
    auto it = maps.find({target, source});
    return it == maps.end() ? nullptr : &it->second;
  }
};

inline SpecializationRelation specialization_relation(const GraphUniverse& u) {
  SpecializationRelation rel;
  rel.g = u.g;
  rel.n = u.n;
  std::map<std::pair<int, int>, std::map<std::string, ContractionMap>> buckets;
  for (int s = 0; s < u.size(); ++s) {
    const DualGraph& src = u.at(s).form.graph;
    const auto& source_auts = u.at(s).automorphisms;
    const int ne = src.edge_count();
    for (unsigned long mask = 0; mask < (1ul << ne); ++mask) {
      std::vector<int> subset;
      for (int e = 0; e < ne; ++e)
        if (mask & (1ul << e)) subset.push_back(e);
      auto [tgt, m] = contract(src, subset);
      const int t = u.find(tgt.encoding);
      if (t < 0)
        throw internal_consistency_error("universe not closed under contraction");
      const std::string key =
          detail::fiber_orbit_key(m.fibers, u.at(t).automorphisms, source_auts);
      buckets[{t, s}].emplace(key, std::move(m));
    }
  }
  for (auto& [pair, by_orbit] : buckets) {
    auto& list = rel.maps[pair];
    for (auto& [key, m] : by_orbit) list.push_back(std::move(m));
  }
  return rel;
}

inline json contraction_map_to_json(const ContractionMap& m) {
  json j;
  j["source"] = json::parse(m.source_encoding);
  j["target"] = json::parse(m.target_encoding);
  j["edges"] = m.contracted_edges;
  j["fibers"] = m.fibers;
  return j;
}

}  // namespace modcomp
