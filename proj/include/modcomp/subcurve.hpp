#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "modcomp/dual_graph.hpp"

namespace modcomp {

/// Invariants of a (possibly disconnected) subcurve Z: arithmetic genus,
/// number of attachment nodes to the complement, and markings carried.
struct SubcurveInvariants {
  int pa = 0;  // sum of component genera minus (components - 1)
  int m = 0;   // |Z ∩ Z^c|, edges to the complement with multiplicity
  int l = 0;   // marked points on Z

  bool operator==(const SubcurveInvariants&) const = default;
};

inline SubcurveInvariants subcurve_invariants(const DualGraph& g, const std::vector<int>& subset) {
  const int n = g.vertex_count();
  if (subset.empty() || static_cast<int>(subset.size()) >= n)
    throw rejected_input("subcurve must be nonempty and proper");
  std::vector<bool> in(n, false);
  for (int v : subset) {
    if (v < 0 || v >= n) throw rejected_input("subcurve vertex out of range");
    in[v] = true;
  }

  int genus_sum = 0, internal = 0, external = 0, marks = 0;
  for (int v = 0; v < n; ++v)
    if (in[v]) {
      genus_sum += g.vertices[v].genus;
      marks += static_cast<int>(g.vertices[v].markings.size());
    }
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : g.edges) {
    const bool a = in[e.u], b = in[e.v];
    if (a && b) {
      ++internal;  // loops included
      parent[find(e.u)] = find(e.v);
    } else if (a || b) {
      ++external;
    }
  }
  int size = 0;
  for (int v = 0; v < n; ++v)
    if (in[v]) ++size;

  SubcurveInvariants out;
  out.pa = genus_sum + internal - size + 1;
  out.m = external;
  out.l = marks;
  return out;
}

/// Connected components of the induced subgraph on `subset`, each sorted.
inline std::vector<std::vector<int>> subcurve_components(const DualGraph& g,
                                                         const std::vector<int>& subset) {
  const int n = g.vertex_count();
  std::vector<bool> in(n, false);
  for (int v : subset) in[v] = true;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : g.edges)
    if (e.u != e.v && in[e.u] && in[e.v]) parent[find(e.u)] = find(e.v);
  std::map<int, std::vector<int>> groups;
  for (int v : subset) groups[find(v)].push_back(v);
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : groups) {
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace modcomp
