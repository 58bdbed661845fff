#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "modcomp/dual_graph.hpp"
#include "modcomp/errors.hpp"

namespace modcomp {

namespace detail {

/// Canonical labeling of a vertex-labeled multigraph by iterative color
/// refinement with individualization on ties. Labels are opaque byte strings
/// that the canonical order must respect; edges may repeat and loop.
/// Returns perm with perm[old] = new, minimizing (labels in new order,
/// sorted relabeled edge list) lexicographically. Graphs here stay tiny
/// (around ten vertices), so the worst-case branching is acceptable.
class CanonicalLabeler {
 public:
  CanonicalLabeler(std::vector<std::string> labels, std::vector<GraphEdge> edges)
      : labels_(std::move(labels)), edges_(std::move(edges)), n_(static_cast<int>(labels_.size())) {}

  std::vector<int> run() {
    std::vector<long long> colors = initial_colors();
    refine(colors);
    search(colors);
    return best_perm_;
  }

 private:
  using Candidate = std::pair<std::vector<std::string>, std::vector<GraphEdge>>;

  std::vector<long long> initial_colors() const {
    std::vector<std::string> keys(n_);
    for (int v = 0; v < n_; ++v) keys[v] = labels_[v];
    return rank_keys(keys);
  }

  static std::vector<long long> rank_keys(const std::vector<std::string>& keys) {
    std::vector<std::string> sorted(keys.begin(), keys.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<long long> colors(keys.size());
    for (std::size_t v = 0; v < keys.size(); ++v)
      colors[v] = std::lower_bound(sorted.begin(), sorted.end(), keys[v]) - sorted.begin();
    return colors;
  }

  void refine(std::vector<long long>& colors) const {
    while (true) {
      // signature = (old color, loop count, sorted neighbor colors); the
      // padded old-color prefix keeps class order monotone across rounds
      std::vector<std::string> keys(n_);
      for (int v = 0; v < n_; ++v) {
        std::vector<long long> nbr;
        int loops = 0;
        for (const auto& e : edges_) {
          if (e.u == e.v) {
            if (e.u == v) ++loops;
            continue;
          }
          if (e.u == v) nbr.push_back(colors[e.v]);
          if (e.v == v) nbr.push_back(colors[e.u]);
        }
        std::sort(nbr.begin(), nbr.end());
        std::string k = pad(colors[v]) + ";" + std::to_string(loops) + ";";
        for (long long c : nbr) k += pad(c) + ",";
        keys[v] = std::move(k);
      }
      std::vector<long long> next = rank_keys(keys);
      if (next == colors) return;
      colors = std::move(next);
    }
  }

  static std::string pad(long long c) {
    std::string s = std::to_string(c);
    return std::string(12 - s.size(), '0') + s;
  }

  void search(std::vector<long long> colors) {
    // classes in color order; all singleton -> candidate ordering
    std::vector<int> order(n_);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return colors[a] < colors[b]; });
    bool discrete = true;
    int split_at = -1;
    for (int i = 0; i + 1 < n_; ++i)
      if (colors[order[i]] == colors[order[i + 1]]) {
        discrete = false;
        split_at = i;
        break;
      }
    if (discrete) {
      consider(order);
      return;
    }
    // individualize each member of the first tied class
    const long long tied = colors[order[split_at]];
    for (int v = 0; v < n_; ++v) {
      if (colors[v] != tied) continue;
      std::vector<long long> branch(colors);
      for (auto& c : branch) c *= 2;
      branch[v] += 1;
      refine(branch);
      search(std::move(branch));
    }
  }

  void consider(const std::vector<int>& order) {
    // order[k] = old vertex at canonical position k; invert to perm[old]=new
    std::vector<int> perm(n_);
    for (int k = 0; k < n_; ++k) perm[order[k]] = k;
    Candidate cand;
    cand.first.resize(n_);
    for (int v = 0; v < n_; ++v) cand.first[perm[v]] = labels_[v];
    cand.second.reserve(edges_.size());
    for (const auto& e : edges_) cand.second.push_back(make_edge(perm[e.u], perm[e.v]));
    std::sort(cand.second.begin(), cand.second.end());
    if (!best_ || cand < *best_) {
      best_ = std::move(cand);
      best_perm_ = std::move(perm);
    }
  }

  std::vector<std::string> labels_;
  std::vector<GraphEdge> edges_;
  int n_;
  std::optional<Candidate> best_;
  std::vector<int> best_perm_;
};

/// All label- and edge-multiset-preserving vertex permutations, by
/// backtracking with incremental multiplicity checks.
inline std::vector<std::vector<int>> labeled_automorphisms(const std::vector<std::string>& labels,
                                                           const std::vector<GraphEdge>& edges) {
  const int n = static_cast<int>(labels.size());
  std::vector<std::vector<int>> mult(n, std::vector<int>(n, 0));
  std::vector<int> loops(n, 0);
  for (const auto& e : edges) {
    if (e.u == e.v)
      ++loops[e.u];
    else {
      ++mult[e.u][e.v];
      ++mult[e.v][e.u];
    }
  }
  std::vector<std::vector<int>> out;
  std::vector<int> perm(n, -1);
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self, int v) -> void {
    if (v == n) {
      out.push_back(perm);
      return;
    }
    for (int w = 0; w < n; ++w) {
      if (used[w] || labels[w] != labels[v] || loops[w] != loops[v]) continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u)
        if (mult[v][u] != mult[w][perm[u]]) ok = false;
      if (!ok) continue;
      perm[v] = w;
      used[w] = true;
      self(self, v + 1);
      used[w] = false;
      perm[v] = -1;
    }
  };
  rec(rec, 0);
  return out;
}

inline std::vector<std::vector<int>> orbits_of(const std::vector<std::vector<int>>& perms, int n) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& p : perms)
    for (int v = 0; v < n; ++v) parent[find(v)] = find(p[v]);
  std::map<int, std::vector<int>> groups;
  for (int v = 0; v < n; ++v) groups[find(v)].push_back(v);
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::string vertex_key(const VertexLabel& v) {
  std::string k = "g" + std::to_string(v.genus) + ";m";
  for (int m : v.markings) k += std::to_string(m) + ",";
  return k;
}

inline std::vector<std::string> vertex_keys(const DualGraph& g) {
  std::vector<std::string> out;
  out.reserve(g.vertices.size());
  for (const auto& v : g.vertices) out.push_back(vertex_key(v));
  return out;
}

}  // namespace detail

/// Isomorphism-class certificate of a stable dual graph. Two graphs have
/// equal encodings iff they are isomorphic as labeled multigraphs. The
/// encoding is the graph JSON under the canonical relabeling, dumped without
/// whitespace, so it is bit-exact across platforms.
struct CanonicalForm {
  std::vector<int> relabeling;  // relabeling[old] = canonical index
  std::string encoding;
  DualGraph graph;  // the canonical representative
};

inline CanonicalForm canonicalize(const DualGraph& g) {
  auto rep = validate(g);
  if (!rep.ok()) throw rejected_input("canonicalize: invalid graph: " + rep.problems.front());
  CanonicalForm out;
  out.relabeling = detail::CanonicalLabeler(detail::vertex_keys(g), g.edges).run();
  out.graph = relabel(g, out.relabeling);
  out.encoding = graph_to_json(out.graph).dump();
  return out;
}

/// Label-preserving multigraph isomorphism g1 -> g2 when one exists.
/// Mismatched (g,n) is simply "not isomorphic", not an error.
inline std::optional<std::vector<int>> are_isomorphic(const DualGraph& g1, const DualGraph& g2) {
  if (g1.ambient_genus != g2.ambient_genus || g1.marking_count != g2.marking_count)
    return std::nullopt;
  if (g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count())
    return std::nullopt;
  const CanonicalForm c1 = canonicalize(g1);
  const CanonicalForm c2 = canonicalize(g2);
  if (c1.encoding != c2.encoding) return std::nullopt;
  std::vector<int> inv2(c2.relabeling.size());
  for (int v = 0; v < g2.vertex_count(); ++v) inv2[c2.relabeling[v]] = v;
  std::vector<int> iso(g1.vertex_count());
  for (int v = 0; v < g1.vertex_count(); ++v) iso[v] = inv2[c1.relabeling[v]];
  return iso;
}

/// The full vertex-level automorphism group. Permutations of parallel edges
/// among themselves are quotiented out.
inline std::vector<std::vector<int>> automorphisms(const DualGraph& g) {
  auto rep = validate(g);
  if (!rep.ok()) throw rejected_input("automorphisms: invalid graph");
  return detail::labeled_automorphisms(detail::vertex_keys(g), g.edges);
}

inline std::vector<std::vector<int>> vertex_orbits(const DualGraph& g) {
  return detail::orbits_of(automorphisms(g), g.vertex_count());
}

}  // namespace modcomp
