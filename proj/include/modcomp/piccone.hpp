#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "modcomp/assign.hpp"
#include "modcomp/cone.hpp"
#include "modcomp/rational.hpp"
#include "modcomp/universe.hpp"

namespace modcomp {

/// One generator of the relative rational Picard group of the universal
/// curve: the relative dualizing class, a section class, or a boundary class
/// indexed by a normalized pair (i, S).
struct BasisElement {
  enum class Kind { Omega, Section, Boundary } kind = Kind::Omega;
  int section = 0;              // 1..n, for Kind::Section
  int side_genus = 0;           // representative i, for Kind::Boundary
  std::vector<int> side_marks;  // representative S, sorted

  std::string symbol() const {
    switch (kind) {
      case Kind::Omega: return "omega";
      case Kind::Section: return "sigma_" + std::to_string(section);
      default: {
        std::string s = "E_" + std::to_string(side_genus) + "_{";
        for (std::size_t i = 0; i < side_marks.size(); ++i) {
          if (i) s += ",";
          s += std::to_string(side_marks[i]);
        }
        return s + "}";
      }
    }
  }
};

/// Free basis of Pic_Q of the universal curve relative to the base: omega and
/// sections and boundary classes for g >= 2, no omega for g = 1, no sections
/// for g = 0. Boundary pairs (i,S) are identified with (g-i, S^c), indices
/// whose side cannot be stable are dropped, and so is the self-complementary
/// index (g/2, {}) when n = 0 and g is even.
struct PicBasis {
  int g = 0;
  int n = 0;
  std::vector<BasisElement> elements;

  int size() const { return static_cast<int>(elements.size()); }

  std::vector<std::string> symbols() const {
    std::vector<std::string> out;
    for (const auto& e : elements) out.push_back(e.symbol());
    return out;
  }

  /// Index of the boundary element whose class contains (i, S); `sign` is +1
  /// when (i, S) is the stored representative and -1 when its complement is.
  std::optional<std::pair<int, int>> boundary_index(int i, const std::vector<int>& S) const {
    for (int k = 0; k < size(); ++k) {
      const auto& e = elements[k];
      if (e.kind != BasisElement::Kind::Boundary) continue;
      if (e.side_genus == i && e.side_marks == S) return {{k, +1}};
      std::vector<int> comp;
      for (int m = 1; m <= n; ++m)
        if (!std::binary_search(e.side_marks.begin(), e.side_marks.end(), m)) comp.push_back(m);
      if (g - e.side_genus == i && comp == S) return {{k, -1}};
    }
    return std::nullopt;
  }
};

inline PicBasis pic_basis(int g, int n) {
  if (!stable_type(g, n)) throw rejected_input("pic_basis: not a stable type");
  PicBasis b;
  b.g = g;
  b.n = n;
  if (g != 1) b.elements.push_back({BasisElement::Kind::Omega, 0, 0, {}});
  if (g != 0)
    for (int i = 1; i <= n; ++i) b.elements.push_back({BasisElement::Kind::Section, i, 0, {}});

  auto stable_side = [&](int i, int s_size) { return i >= 1 || s_size >= 2; };
  std::vector<std::pair<int, std::vector<int>>> reps;
  for (int i = 0; i <= g; ++i) {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<int> S, Sc;
      for (int m = 1; m <= n; ++m) {
        if (mask & (1u << (m - 1)))
          S.push_back(m);
        else
          Sc.push_back(m);
      }
      if (!stable_side(i, static_cast<int>(S.size())) ||
          !stable_side(g - i, static_cast<int>(Sc.size())))
        continue;
      if (n == 0 && 2 * i == g) continue;  // self-complementary index is excluded
      std::pair<int, std::vector<int>> self{i, S}, other{g - i, Sc};
      const auto& rep = std::min(self, other);
      if (std::find(reps.begin(), reps.end(), rep) == reps.end()) reps.push_back(rep);
    }
  }
  std::sort(reps.begin(), reps.end());
  for (auto& [i, S] : reps)
    b.elements.push_back({BasisElement::Kind::Boundary, 0, i, std::move(S)});
  return b;
}

/// Exact-rational divisor class in a PicBasis.
struct DivisorClass {
  const PicBasis* basis = nullptr;
  QVec coefficients;
};

namespace detail {

/// Integer degree vectors of every basis element against every vertex of G:
/// row[v][k] is the degree of basis element k on vertex v. The omega entry is
/// 2g(v)-2+|v| with |v| counting half-edges (loops twice, markings excluded);
/// a section entry is the marking indicator; a boundary entry counts bridges
/// at v of the representative type minus bridges of the complementary type.
inline std::vector<ZVec> degree_rows(const PicBasis& basis, const DualGraph& g) {
  const int nv = g.vertex_count();
  std::vector<ZVec> rows(nv, ZVec(basis.size(), Integer(0)));

  for (int k = 0; k < basis.size(); ++k) {
    const auto& e = basis.elements[k];
    if (e.kind == BasisElement::Kind::Omega)
      for (int v = 0; v < nv; ++v) rows[v][k] = 2 * g.vertices[v].genus - 2 + g.valence(v);
    if (e.kind == BasisElement::Kind::Section)
      for (int v = 0; v < nv; ++v)
        rows[v][k] = std::binary_search(g.vertices[v].markings.begin(),
                                        g.vertices[v].markings.end(), e.section)
                         ? 1
                         : 0;
  }

  // bridge decomposition: an edge contributes to E-classes only if removing
  // it disconnects the graph
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto& ed = g.edges[e];
    if (ed.u == ed.v) continue;
    std::vector<int> parent(nv);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (int f = 0; f < g.edge_count(); ++f)
      if (f != e) parent[find(g.edges[f].u)] = find(g.edges[f].v);
    if (find(ed.u) == find(ed.v)) continue;

    auto side_type = [&](int root) {
      int genus = 0, edges_inside = 0, verts = 0;
      std::vector<int> marks;
      for (int v = 0; v < nv; ++v)
        if (find(v) == root) {
          ++verts;
          genus += g.vertices[v].genus;
          marks.insert(marks.end(), g.vertices[v].markings.begin(), g.vertices[v].markings.end());
        }
      for (int f = 0; f < g.edge_count(); ++f)
        if (f != e && find(g.edges[f].u) == root) ++edges_inside;
      std::sort(marks.begin(), marks.end());
      return std::pair<int, std::vector<int>>{genus + edges_inside - verts + 1, marks};
    };
    const auto [gu, su] = side_type(find(ed.u));
    const auto [gv, sv] = side_type(find(ed.v));

    // at u the edge carries the type of the far side, and vice versa
    if (auto hit = basis.boundary_index(gv, sv)) rows[ed.u][hit->first] += hit->second;
    if (auto hit = basis.boundary_index(gu, su)) rows[ed.v][hit->first] += hit->second;
  }
  return rows;
}

}  // namespace detail

/// Degree of D on the irreducible component of the fiber named by `vertex`.
inline Rational degree(const DivisorClass& d, const DualGraph& g, int vertex) {
  if (vertex < 0 || vertex >= g.vertex_count()) throw rejected_input("degree: vertex out of range");
  if (static_cast<int>(d.coefficients.size()) != d.basis->size())
    throw rejected_input("degree: coefficient vector does not match basis");
  const auto rows = detail::degree_rows(*d.basis, g);
  Rational out = 0;
  for (int k = 0; k < d.basis->size(); ++k) out += d.coefficients[k] * Rational(rows[vertex][k]);
  return out;
}

struct InequalityRow {
  int graph = 0;   // universe index
  int vertex = 0;  // canonical vertex
  ZVec coefficients;
};

/// One nonnegativity condition per (graph, vertex) over the universe, or over
/// the zero strata only when `zero_strata_only` is set.
inline std::vector<InequalityRow> fiber_inequalities(const PicBasis& basis,
                                                     const GraphUniverse& u,
                                                     bool zero_strata_only = false) {
  if (basis.g != u.g || basis.n != u.n) throw rejected_input("fiber_inequalities: type mismatch");
  std::vector<int> graphs;
  if (zero_strata_only)
    graphs = zero_strata(u);
  else {
    graphs.resize(u.size());
    std::iota(graphs.begin(), graphs.end(), 0);
  }
  std::vector<InequalityRow> rows;
  for (int i : graphs) {
    const auto per_vertex = detail::degree_rows(basis, u.at(i).form.graph);
    for (int v = 0; v < static_cast<int>(per_vertex.size()); ++v)
      rows.push_back({i, v, per_vertex[v]});
  }
  return rows;
}

inline ConeDescription nef_cone(const PicBasis& basis, const GraphUniverse& u,
                                bool zero_strata_only = false) {
  std::vector<ZVec> rows;
  for (auto& r : fiber_inequalities(basis, u, zero_strata_only)) rows.push_back(std::move(r.coefficients));
  return dual_description(rows);
}

/// A proper nonzero face of the relative curve cone, carried by its dual nef
/// face: the witness is the sum of the nef rays spanning that face, and the
/// vanishing set collects the (graph, vertex) pairs of degree zero against
/// the witness. The face's codimension inside the curve cone equals the
/// dimension of the dual nef face.
struct ConeFace {
  std::vector<int> nef_rays;  // indices into ConeDescription::rays
  ZVec witness;
  std::vector<std::pair<int, int>> vanishing;  // (universe index, vertex)
  int codim = 0;
};

inline std::vector<ConeFace> curve_cone_faces(const PicBasis& basis, const GraphUniverse& u,
                                              const ConeDescription& cone) {
  const std::size_t d = basis.size();
  // faces of the nef cone = ray subsets cut out by facet intersections
  std::set<std::vector<int>> ray_sets;
  const int nf = static_cast<int>(cone.facets.size());
  if (nf > 22) throw budget_exceeded("curve_cone_faces: too many facets to enumerate");
  for (unsigned mask = 0; mask < (1u << nf); ++mask) {
    std::vector<int> members;
    for (int r = 0; r < static_cast<int>(cone.rays.size()); ++r) {
      bool inside = true;
      for (int f = 0; f < nf && inside; ++f)
        if ((mask & (1u << f)) && dot(cone.facets[f], cone.rays[r]) != 0) inside = false;
      if (inside) members.push_back(r);
    }
    if (members.empty() || members.size() == cone.rays.size()) continue;  // zero face / whole cone
    ray_sets.insert(std::move(members));
  }

  const auto all_rows = fiber_inequalities(basis, u, false);
  std::vector<ConeFace> faces;
  for (const auto& members : ray_sets) {
    ConeFace f;
    f.nef_rays = members;
    f.witness.assign(d, Integer(0));
    std::vector<ZVec> span;
    for (int r : members) {
      span.push_back(cone.rays[r]);
      for (std::size_t c = 0; c < d; ++c) f.witness[c] += cone.rays[r][c];
    }
    f.witness = primitive(std::move(f.witness));
    f.codim = rank(span);
    for (const auto& row : all_rows)
      if (dot(row.coefficients, f.witness) == 0) f.vanishing.emplace_back(row.graph, row.vertex);
    faces.push_back(std::move(f));
  }
  std::sort(faces.begin(), faces.end(), [](const ConeFace& a, const ConeFace& b) {
    if (a.codim != b.codim) return a.codim < b.codim;
    return a.witness < b.witness;
  });
  return faces;
}

/// The assignment induced by a nef divisor interior to the face: select, in
/// each graph, the vertices of degree zero against the witness. The result
/// must satisfy the assignment axioms; a failure would contradict the
/// construction and is raised as an internal error.
inline ExtremalAssignment face_assignment(const GraphUniverse& u, const SpecializationRelation& rel,
                                          const ConeFace& face) {
  ExtremalAssignment a;
  a.g = u.g;
  a.n = u.n;
  for (const auto& entry : u.entries) a.table[entry.form.encoding] = {};
  for (const auto& [graph, vertex] : face.vanishing)
    a.table[u.at(graph).form.encoding].push_back(vertex);
  for (auto& [enc, sel] : a.table) std::sort(sel.begin(), sel.end());
  const AxiomReport rep = check_axioms(a, u, rel);
  if (!rep.passed)
    throw internal_consistency_error("face_assignment: induced assignment violates the axioms");
  return a;
}

}  // namespace modcomp
