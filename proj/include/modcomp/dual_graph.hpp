#pragma once

#include <nlohmann/json.hpp>

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "modcomp/errors.hpp"

namespace modcomp {

using json = nlohmann::ordered_json;

/// Genus and marked-point labels of one irreducible component.
struct VertexLabel {
  int genus = 0;
  std::vector<int> markings;  // sorted, subset of {1..n}

  bool operator==(const VertexLabel&) const = default;
};

/// One node of the curve; endpoints are vertex indices, normalized u <= v.
/// A loop (u == u) is a non-separating node.
struct GraphEdge {
  int u = 0;
  int v = 0;

  bool operator==(const GraphEdge&) const = default;
  auto operator<=>(const GraphEdge&) const = default;
};

inline GraphEdge make_edge(int a, int b) { return a <= b ? GraphEdge{a, b} : GraphEdge{b, a}; }

/// Dual graph of an n-pointed stable curve of genus g: one vertex per
/// irreducible component, one edge per node. Multi-edges and loops carry
/// multiplicity by repetition; the edge list is kept sorted.
struct DualGraph {
  int ambient_genus = 0;
  int marking_count = 0;
  std::vector<VertexLabel> vertices;
  std::vector<GraphEdge> edges;

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }

  void add_edge(int a, int b) {
    edges.push_back(make_edge(a, b));
    std::sort(edges.begin(), edges.end());
  }

  /// Half-edges at v; loops count twice. Markings are not included.
  int valence(int v) const {
    int d = 0;
    for (const auto& e : edges) {
      if (e.u == v) ++d;
      if (e.v == v) ++d;
    }
    return d;
  }

  int loop_count(int v) const {
    int c = 0;
    for (const auto& e : edges)
      if (e.u == v && e.v == v) ++c;
    return c;
  }

  int multiplicity(int a, int b) const {
    const GraphEdge key = make_edge(a, b);
    return static_cast<int>(std::count(edges.begin(), edges.end(), key));
  }

  bool operator==(const DualGraph&) const = default;
};

/// Smooth curve of type (g,n): a single vertex carrying everything.
inline DualGraph smooth_graph(int g, int n) {
  DualGraph out;
  out.ambient_genus = g;
  out.marking_count = n;
  VertexLabel v;
  v.genus = g;
  for (int i = 1; i <= n; ++i) v.markings.push_back(i);
  out.vertices.push_back(std::move(v));
  return out;
}

inline bool connected(const DualGraph& g) {
  const int n = g.vertex_count();
  if (n == 0) return false;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : g.edges) parent[find(e.u)] = find(e.v);
  int root = find(0);
  for (int v = 1; v < n; ++v)
    if (find(v) != root) return false;
  return true;
}

inline int first_betti_number(const DualGraph& g) {
  // b1 = E - V + C; for the graphs we accept C is 1.
  const int n = g.vertex_count();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int comps = n;
  for (const auto& e : g.edges) {
    int a = find(e.u), b = find(e.v);
    if (a != b) {
      parent[a] = b;
      --comps;
    }
  }
  return g.edge_count() - n + comps;
}

/// Violations are data, not failures: an empty report means the graph is a
/// valid stable dual graph of its type.
struct ValidationReport {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

inline ValidationReport validate(const DualGraph& g) {
  ValidationReport rep;
  auto fail = [&](std::string msg) { rep.problems.push_back(std::move(msg)); };

  if (g.ambient_genus < 0) fail("ambient genus is negative");
  if (g.marking_count < 0) fail("marking count is negative");
  if (g.vertices.empty()) {
    fail("graph has no vertices");
    return rep;
  }
  for (const auto& e : g.edges) {
    if (e.u < 0 || e.v < 0 || e.u >= g.vertex_count() || e.v >= g.vertex_count()) {
      fail("edge endpoint out of range");
      return rep;
    }
    if (e.u > e.v) fail("edge endpoints not normalized");
  }
  if (!std::is_sorted(g.edges.begin(), g.edges.end())) fail("edge list not sorted");

  if (!connected(g)) fail("graph is not connected");

  int genus_sum = 0;
  for (const auto& v : g.vertices) {
    if (v.genus < 0) fail("vertex genus is negative");
    genus_sum += v.genus;
  }
  if (genus_sum + first_betti_number(g) != g.ambient_genus)
    fail("genus formula violated: sum of vertex genera + b1 != ambient genus");

  std::set<int> seen;
  bool marking_problem = false;
  for (const auto& v : g.vertices) {
    if (!std::is_sorted(v.markings.begin(), v.markings.end())) {
      fail("vertex markings not sorted");
      marking_problem = true;
    }
    for (int m : v.markings) {
      if (m < 1 || m > g.marking_count) {
        fail("marking label out of range");
        marking_problem = true;
      } else if (!seen.insert(m).second) {
        fail("marking label repeated across vertices");
        marking_problem = true;
      }
    }
  }
  if (!marking_problem && static_cast<int>(seen.size()) != g.marking_count)
    fail("markings do not cover {1..n}");

  for (int i = 0; i < g.vertex_count(); ++i) {
    const auto& v = g.vertices[i];
    if (2 * v.genus - 2 + g.valence(i) + static_cast<int>(v.markings.size()) <= 0)
      fail("vertex " + std::to_string(i) + " violates stability");
  }
  return rep;
}

/// perm[old] = new. Vertices, markings, and edges are transported; the edge
/// list is re-sorted.
inline DualGraph relabel(const DualGraph& g, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != g.vertex_count())
    throw rejected_input("relabel: permutation size mismatch");
  DualGraph out;
  out.ambient_genus = g.ambient_genus;
  out.marking_count = g.marking_count;
  out.vertices.resize(g.vertices.size());
  for (int i = 0; i < g.vertex_count(); ++i) out.vertices[perm[i]] = g.vertices[i];
  out.edges.reserve(g.edges.size());
  for (const auto& e : g.edges) out.edges.push_back(make_edge(perm[e.u], perm[e.v]));
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

inline json graph_to_json(const DualGraph& g) {
  json j;
  j["g"] = g.ambient_genus;
  j["n"] = g.marking_count;
  j["vertices"] = json::array();
  for (const auto& v : g.vertices) {
    json jv;
    jv["genus"] = v.genus;
    jv["markings"] = v.markings;
    j["vertices"].push_back(std::move(jv));
  }
  j["edges"] = json::array();
  for (const auto& e : g.edges) j["edges"].push_back(json::array({e.u, e.v}));
  return j;
}

inline DualGraph graph_from_json(const json& j) {
  DualGraph g;
  try {
    g.ambient_genus = j.at("g").get<int>();
    g.marking_count = j.at("n").get<int>();
    for (const auto& jv : j.at("vertices")) {
      VertexLabel v;
      v.genus = jv.at("genus").get<int>();
      v.markings = jv.at("markings").get<std::vector<int>>();
      std::sort(v.markings.begin(), v.markings.end());
      g.vertices.push_back(std::move(v));
    }
    for (const auto& je : j.at("edges")) {
      if (!je.is_array() || je.size() != 2) throw rejected_input("edge entry must be a pair");
      g.edges.push_back(make_edge(je[0].get<int>(), je[1].get<int>()));
    }
  } catch (const json::exception& e) {
    throw rejected_input(std::string("malformed graph JSON: ") + e.what());
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

}  // namespace modcomp
