#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "modcomp/assign.hpp"
#include "modcomp/canonical.hpp"
#include "modcomp/subcurve.hpp"
#include "modcomp/universe.hpp"

namespace modcomp {

/// The contracted model of a stable curve: surviving components, their nodes,
/// and one singular point of type (g,m) per contracted connected subcurve,
/// with branch incidences and absorbed markings.
struct ModelComponent {
  int genus = 0;
  std::vector<int> markings;  // at smooth points, sorted

  bool operator==(const ModelComponent&) const = default;
};

struct ModelPoint {
  int g = 0;                  // genus of the singularity
  int m = 0;                  // number of branches
  std::vector<int> markings;  // absorbed by the contracted subcurve, sorted
  std::vector<int> branches;  // component index per branch, sorted, size m

  bool operator==(const ModelPoint&) const = default;
};

struct SingularModelGraph {
  int ambient_genus = 0;
  int marking_count = 0;
  std::vector<ModelComponent> components;
  std::vector<std::pair<int, int>> nodes;  // component pairs, normalized and sorted
  std::vector<ModelPoint> points;

  bool operator==(const SingularModelGraph&) const = default;
};

inline json model_to_json(const SingularModelGraph& m) {
  json j;
  j["g"] = m.ambient_genus;
  j["n"] = m.marking_count;
  j["components"] = json::array();
  for (const auto& c : m.components) {
    json jc;
    jc["genus"] = c.genus;
    jc["markings"] = c.markings;
    j["components"].push_back(std::move(jc));
  }
  j["nodes"] = json::array();
  for (const auto& [a, b] : m.nodes) j["nodes"].push_back(json::array({a, b}));
  j["points"] = json::array();
  for (const auto& p : m.points) {
    json jp;
    jp["g"] = p.g;
    jp["m"] = p.m;
    jp["markings"] = p.markings;
    jp["branches"] = p.branches;
    j["points"].push_back(std::move(jp));
  }
  return j;
}

inline SingularModelGraph model_from_json(const json& j) {
  SingularModelGraph m;
  try {
    m.ambient_genus = j.at("g").get<int>();
    m.marking_count = j.at("n").get<int>();
    for (const auto& jc : j.at("components")) {
      ModelComponent c;
      c.genus = jc.at("genus").get<int>();
      c.markings = jc.at("markings").get<std::vector<int>>();
      std::sort(c.markings.begin(), c.markings.end());
      m.components.push_back(std::move(c));
    }
    for (const auto& jn : j.at("nodes")) {
      int a = jn.at(0).get<int>(), b = jn.at(1).get<int>();
      m.nodes.emplace_back(std::min(a, b), std::max(a, b));
    }
    for (const auto& jp : j.at("points")) {
      ModelPoint p;
      p.g = jp.at("g").get<int>();
      p.m = jp.at("m").get<int>();
      p.markings = jp.at("markings").get<std::vector<int>>();
      p.branches = jp.at("branches").get<std::vector<int>>();
      std::sort(p.markings.begin(), p.markings.end());
      std::sort(p.branches.begin(), p.branches.end());
      m.points.push_back(std::move(p));
    }
  } catch (const json::exception& e) {
    throw rejected_input(std::string("malformed model JSON: ") + e.what());
  }
  const int nc = static_cast<int>(m.components.size());
  for (const auto& [a, b] : m.nodes)
    if (a < 0 || b < 0 || a >= nc || b >= nc)
      throw rejected_input("model node endpoint out of range");
  for (const auto& p : m.points) {
    if (p.m != static_cast<int>(p.branches.size()))
      throw rejected_input("model point branch count does not match its m");
    for (int c : p.branches)
      if (c < 0 || c >= nc) throw rejected_input("model branch component out of range");
  }
  std::sort(m.nodes.begin(), m.nodes.end());
  return m;
}

namespace detail {

inline std::string component_key(const ModelComponent& c) {
  std::string k = "C;g" + std::to_string(c.genus) + ";m";
  for (int m : c.markings) k += std::to_string(m) + ",";
  return k;
}

inline std::string point_key(const ModelPoint& p) {
  std::string k = "P;g" + std::to_string(p.g) + ";b" + std::to_string(p.m) + ";m";
  for (int m : p.markings) k += std::to_string(m) + ",";
  return k;
}

}  // namespace detail

/// Canonical serialization of a model, via canonical labeling of the
/// component/point incidence multigraph (components and points as vertices,
/// nodes and branches as edges). Equal strings iff isomorphic models.
inline std::string model_encoding(const SingularModelGraph& m) {
  const int nc = static_cast<int>(m.components.size());
  const int np = static_cast<int>(m.points.size());
  std::vector<std::string> labels;
  for (const auto& c : m.components) labels.push_back(detail::component_key(c));
  for (const auto& p : m.points) labels.push_back(detail::point_key(p));
  std::vector<GraphEdge> edges;
  for (const auto& [a, b] : m.nodes) edges.push_back(make_edge(a, b));
  for (int p = 0; p < np; ++p)
    for (int c : m.points[p].branches) edges.push_back(make_edge(c, nc + p));

  const std::vector<int> perm = detail::CanonicalLabeler(labels, edges).run();

  // canonical order of components among themselves, then points
  std::vector<int> comp_order(nc), point_order(np);
  std::iota(comp_order.begin(), comp_order.end(), 0);
  std::sort(comp_order.begin(), comp_order.end(), [&](int a, int b) { return perm[a] < perm[b]; });
  std::iota(point_order.begin(), point_order.end(), 0);
  std::sort(point_order.begin(), point_order.end(),
            [&](int a, int b) { return perm[nc + a] < perm[nc + b]; });

  std::vector<int> comp_new(nc);
  for (int i = 0; i < nc; ++i) comp_new[comp_order[i]] = i;

  SingularModelGraph out;
  out.ambient_genus = m.ambient_genus;
  out.marking_count = m.marking_count;
  for (int i = 0; i < nc; ++i) out.components.push_back(m.components[comp_order[i]]);
  for (const auto& [a, b] : m.nodes)
    out.nodes.emplace_back(std::min(comp_new[a], comp_new[b]), std::max(comp_new[a], comp_new[b]));
  std::sort(out.nodes.begin(), out.nodes.end());
  for (int i = 0; i < np; ++i) {
    ModelPoint p = m.points[point_order[i]];
    for (int& c : p.branches) c = comp_new[c];
    std::sort(p.branches.begin(), p.branches.end());
    out.points.push_back(std::move(p));
  }
  return model_to_json(out).dump();
}

inline bool models_isomorphic(const SingularModelGraph& a, const SingularModelGraph& b) {
  return model_encoding(a) == model_encoding(b);
}

/// Replace each connected component of Z by a singular point of type
/// (p_a, attachments), absorbing its markings; complement vertices survive as
/// components and complement-internal edges as nodes. Z may be empty (the
/// identity model) but not everything.
inline SingularModelGraph contract_model(const DualGraph& g, const std::vector<int>& selected) {
  auto rep = validate(g);
  if (!rep.ok()) throw rejected_input("contract_model: invalid graph");
  const int nv = g.vertex_count();
  std::vector<bool> in(nv, false);
  for (int v : selected) {
    if (v < 0 || v >= nv) throw rejected_input("contract_model: vertex out of range");
    in[v] = true;
  }
  if (static_cast<int>(std::count(in.begin(), in.end(), true)) == nv)
    throw rejected_input("contract_model: cannot contract the whole curve");

  SingularModelGraph out;
  out.ambient_genus = g.ambient_genus;
  out.marking_count = g.marking_count;
  std::vector<int> comp_index(nv, -1);
  for (int v = 0; v < nv; ++v)
    if (!in[v]) {
      comp_index[v] = static_cast<int>(out.components.size());
      out.components.push_back({g.vertices[v].genus, g.vertices[v].markings});
    }

  std::vector<int> piece_index(nv, -1);
  std::vector<std::vector<int>> pieces;
  if (!selected.empty()) {
    pieces = subcurve_components(g, selected);
    for (int p = 0; p < static_cast<int>(pieces.size()); ++p) {
      for (int v : pieces[p]) piece_index[v] = p;
      const SubcurveInvariants inv = subcurve_invariants(g, pieces[p]);
      ModelPoint pt;
      pt.g = inv.pa;
      pt.m = inv.m;
      for (int v : pieces[p])
        pt.markings.insert(pt.markings.end(), g.vertices[v].markings.begin(),
                           g.vertices[v].markings.end());
      std::sort(pt.markings.begin(), pt.markings.end());
      out.points.push_back(std::move(pt));
    }
  }

  for (const auto& e : g.edges) {
    const bool a = in[e.u], b = in[e.v];
    if (!a && !b) {
      out.nodes.emplace_back(std::min(comp_index[e.u], comp_index[e.v]),
                             std::max(comp_index[e.u], comp_index[e.v]));
    } else if (a != b) {
      const int point = piece_index[a ? e.u : e.v];
      const int comp = comp_index[a ? e.v : e.u];
      out.points[point].branches.push_back(comp);
    }
    // edges inside Z are absorbed into the point's genus
  }
  std::sort(out.nodes.begin(), out.nodes.end());
  for (auto& p : out.points) std::sort(p.branches.begin(), p.branches.end());
  return out;
}

/// Arithmetic genus carried by the model: component and point genera plus the
/// first Betti number of the incidence structure, with nodes counted as
/// genus-zero two-branch points.
inline int model_genus(const SingularModelGraph& m) {
  const int nc = static_cast<int>(m.components.size());
  const int np = static_cast<int>(m.points.size());
  const int nn = static_cast<int>(m.nodes.size());
  const int verts = nc + np + nn;
  std::vector<int> parent(verts);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int edges = 0, comps = verts;
  auto join = [&](int a, int b) {
    ++edges;
    a = find(a);
    b = find(b);
    if (a != b) {
      parent[a] = b;
      --comps;
    }
  };
  for (int i = 0; i < nn; ++i) {
    join(m.nodes[i].first, nc + np + i);
    join(m.nodes[i].second, nc + np + i);
  }
  for (int p = 0; p < np; ++p)
    for (int c : m.points[p].branches) join(c, nc + p);

  int genus = edges - verts + comps;
  for (const auto& c : m.components) genus += c.genus;
  for (const auto& p : m.points) genus += p.g;
  return genus;
}

/// Membership test: a stable graph admits a contraction to the model iff
/// some vertex subset contracts to it. Returns such a subset in the graph's
/// own labeling.
inline std::optional<std::vector<int>> admits_contraction(const DualGraph& gs,
                                                          const SingularModelGraph& m) {
  if (gs.ambient_genus != m.ambient_genus || gs.marking_count != m.marking_count)
    return std::nullopt;
  const std::string want = model_encoding(m);
  const int nv = gs.vertex_count();
  for (unsigned mask = 0; mask + 1 < (1u << nv); ++mask) {
    std::vector<int> subset;
    for (int v = 0; v < nv; ++v)
      if (mask & (1u << v)) subset.push_back(v);
    if (model_encoding(contract_model(gs, subset)) == want) return subset;
  }
  return std::nullopt;
}

/// Catalog of analytic classes for a singularity type (g,m). Exhaustiveness
/// is only claimed where it is established: genus zero, and the cusp.
struct SingularityType {
  int g = 0;
  int m = 0;
  std::vector<std::string> known_classes;
  enum class Coverage { Exhaustive, ExhibitedOnly, Uncataloged } coverage = Coverage::Uncataloged;
};

inline SingularityType singularity_catalog(int g, int m) {
  if (g < 0 || m < 1) throw rejected_input("singularity_catalog: need g >= 0 and m >= 1");
  SingularityType t;
  t.g = g;
  t.m = m;
  if (g == 0) {
    t.coverage = SingularityType::Coverage::Exhaustive;
    if (m == 1)
      t.known_classes = {"smooth point"};
    else if (m == 2)
      t.known_classes = {"node"};
    else if (m == 3)
      t.known_classes = {"rational triple point"};
    else
      t.known_classes = {"rational " + std::to_string(m) + "-fold point"};
  } else if (g == 1 && m == 1) {
    t.coverage = SingularityType::Coverage::Exhaustive;
    t.known_classes = {"cusp"};
  } else if (g == 1 && m == 2) {
    // the two exhibited classes; exhaustiveness unverified
    t.coverage = SingularityType::Coverage::ExhibitedOnly;
    t.known_classes = {"tacnode", "cusp with transverse smooth branch"};
  }
  return t;
}

/// The combinatorial footprint of an assignment's Z-stable class: every
/// singularity type (p_a, attachments, absorbed markings) arising from a
/// selected connected subcurve anywhere in the universe.
inline std::vector<std::tuple<int, int, int>> zstable_summary(const ExtremalAssignment& a,
                                                              const GraphUniverse& u,
                                                              const SpecializationRelation& rel) {
  const AxiomReport rep = check_axioms(a, u, rel);
  if (!rep.passed) throw rejected_input("zstable_summary: assignment violates the axioms");
  std::set<std::tuple<int, int, int>> types;
  for (const auto& entry : u.entries) {
    const auto& sel = a.table.at(entry.form.encoding);
    if (sel.empty()) continue;
    for (const auto& piece : subcurve_components(entry.form.graph, sel)) {
      const SubcurveInvariants inv = subcurve_invariants(entry.form.graph, piece);
      types.insert({inv.pa, inv.m, inv.l});
    }
  }
  return {types.begin(), types.end()};
}

}  // namespace modcomp
