#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "modcomp/specialize.hpp"
#include "modcomp/subcurve.hpp"
#include "modcomp/universe.hpp"

namespace modcomp {

/// An assignment of an automorphism-closed vertex subset to every graph of a
/// universe. Selections are stored per canonical graph as sorted canonical
/// vertex indices.
struct ExtremalAssignment {
  int g = 0;
  int n = 0;
  std::map<std::string, std::vector<int>> table;

  bool operator==(const ExtremalAssignment&) const = default;
};

namespace detail {

/// Builds an assignment by selecting, in each graph, every vertex contained
/// in some subcurve matching `pick`. Subcurves range over all nonempty proper
/// vertex subsets, so disconnected and multi-component tails are covered.
inline ExtremalAssignment assignment_from_subcurves(
    const GraphUniverse& u, const std::function<bool(const SubcurveInvariants&)>& pick) {
  ExtremalAssignment a;
  a.g = u.g;
  a.n = u.n;
  for (const auto& entry : u.entries) {
    const DualGraph& g = entry.form.graph;
    const int nv = g.vertex_count();
    std::set<int> selected;
    for (unsigned mask = 1; mask + 1 < (1u << nv); ++mask) {
      std::vector<int> subset;
      for (int v = 0; v < nv; ++v)
        if (mask & (1u << v)) subset.push_back(v);
      if (pick(subcurve_invariants(g, subset)))
        selected.insert(subset.begin(), subset.end());
    }
    a.table[entry.form.encoding] = std::vector<int>(selected.begin(), selected.end());
  }
  return a;
}

}  // namespace detail

inline ExtremalAssignment trivial_assignment(const GraphUniverse& u) {
  ExtremalAssignment a;
  a.g = u.g;
  a.n = u.n;
  for (const auto& entry : u.entries) a.table[entry.form.encoding] = {};
  return a;
}

/// Selects all vertices lying in unmarked subcurves of arithmetic genus one
/// with a single attachment node.
inline ExtremalAssignment elliptic_tails_assignment(const GraphUniverse& u) {
  return detail::assignment_from_subcurves(
      u, [](const SubcurveInvariants& s) { return s.pa == 1 && s.m == 1 && s.l == 0; });
}

/// Selects all vertices lying in genus-zero single-attachment subcurves
/// carrying at most `max_marks` marked points.
inline ExtremalAssignment rational_tails_assignment(const GraphUniverse& u, int max_marks) {
  return detail::assignment_from_subcurves(u, [max_marks](const SubcurveInvariants& s) {
    return s.pa == 0 && s.m == 1 && s.l <= max_marks;
  });
}

/// Selects every vertex with an empty marking set.
inline ExtremalAssignment unmarked_assignment(const GraphUniverse& u) {
  ExtremalAssignment a;
  a.g = u.g;
  a.n = u.n;
  for (const auto& entry : u.entries) {
    std::vector<int> sel;
    const DualGraph& g = entry.form.graph;
    for (int v = 0; v < g.vertex_count(); ++v)
      if (g.vertices[v].markings.empty()) sel.push_back(v);
    a.table[entry.form.encoding] = std::move(sel);
  }
  return a;
}

/// The stored subset under G's canonical labeling.
inline std::vector<int> evaluate(const ExtremalAssignment& a, const DualGraph& g) {
  const CanonicalForm cf = canonicalize(g);
  auto it = a.table.find(cf.encoding);
  if (it == a.table.end()) throw rejected_input("evaluate: graph not in assignment domain");
  return it->second;
}

struct AxiomViolation {
  int axiom = 0;                       // 1, 2, or 3
  std::string graph;                   // encoding of the offending graph (target for axiom 3)
  std::string detail;
  std::optional<ContractionMap> map;   // witnessing specialization for axiom 3
};

struct AxiomReport {
  bool passed = true;
  std::vector<AxiomViolation> violations;
};

/// Exhaustive verification of the three axioms over the whole universe and
/// every witnessing contraction map. Axiom 2 holds by construction for
/// assignments built here but is still checked, since tables may come from
/// files.
inline AxiomReport check_axioms(const ExtremalAssignment& a, const GraphUniverse& u,
                                const SpecializationRelation& rel) {
  if (a.g != u.g || a.n != u.n) throw rejected_input("check_axioms: universe type mismatch");
  for (const auto& entry : u.entries)
    if (!a.table.count(entry.form.encoding))
      throw rejected_input("check_axioms: assignment table does not cover the universe");

  AxiomReport rep;
  auto flag = [&](AxiomViolation v) {
    rep.passed = false;
    rep.violations.push_back(std::move(v));
  };

  for (const auto& entry : u.entries) {
    const auto& sel = a.table.at(entry.form.encoding);
    if (static_cast<int>(sel.size()) == entry.form.graph.vertex_count())
      flag({1, entry.form.encoding, "every vertex selected", std::nullopt});
    for (const auto& orbit : entry.orbits) {
      int hits = 0;
      for (int v : orbit)
        if (std::binary_search(sel.begin(), sel.end(), v)) ++hits;
      if (hits != 0 && hits != static_cast<int>(orbit.size()))
        flag({2, entry.form.encoding, "selection splits an automorphism orbit", std::nullopt});
    }
  }

  for (const auto& [pair, maps] : rel.maps) {
    const auto& [t, s] = pair;
    const auto& sel_t = a.table.at(u.at(t).form.encoding);
    const auto& sel_s = a.table.at(u.at(s).form.encoding);
    for (const auto& m : maps) {
      for (int v = 0; v < static_cast<int>(m.fibers.size()); ++v) {
        const bool in_target = std::binary_search(sel_t.begin(), sel_t.end(), v);
        bool fiber_in = true;
        for (int w : m.fibers[v])
          if (!std::binary_search(sel_s.begin(), sel_s.end(), w)) fiber_in = false;
        if (in_target != fiber_in)
          flag({3, m.target_encoding,
                "vertex " + std::to_string(v) + (in_target ? " selected" : " not selected") +
                    " but its fiber is" + (fiber_in ? "" : " not") + " fully selected",
                m});
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Constraint propagation over (graph, orbit) booleans.

struct Seed {
  std::string encoding;  // canonical graph encoding
  int vertex = 0;        // canonical vertex index; its whole orbit is seeded
  bool value = true;
};

enum class Tri { Unknown, True, False };

struct PropagationResult {
  enum class Status { Consistent, Contradiction } status = Status::Consistent;

  struct Fact {
    int graph = 0;
    int orbit = 0;
    bool value = true;
    std::string rule;                          // human-readable derivation step
    std::vector<std::pair<int, int>> parents;  // (graph, orbit) facts this follows from
  };

  struct Violation {
    std::string kind;   // "axiom1" or "conflict"
    int graph = 0;
    std::string detail;
  };

  // forced values per graph, per orbit; Unknown = not forced
  std::vector<std::vector<Tri>> values;
  std::map<std::pair<int, int>, Fact> facts_true;
  std::map<std::pair<int, int>, Fact> facts_false;
  std::vector<Violation> violations;

  /// Graph indices reachable from a forced fact by walking derivations back
  /// to the seeds; the witness chain of that fact.
  std::vector<int> witness_chain(int graph, int orbit, bool value) const {
    std::set<int> seen_graphs;
    std::set<std::pair<std::pair<int, int>, bool>> visited;
    std::vector<std::pair<std::pair<int, int>, bool>> stack{{{graph, orbit}, value}};
    while (!stack.empty()) {
      auto [key, val] = stack.back();
      stack.pop_back();
      if (!visited.insert({key, val}).second) continue;
      const auto& table = val ? facts_true : facts_false;
      auto it = table.find(key);
      if (it == table.end()) continue;
      seen_graphs.insert(it->second.graph);
      for (const auto& p : it->second.parents) {
        stack.push_back({p, true});
        stack.push_back({p, false});
      }
    }
    return {seen_graphs.begin(), seen_graphs.end()};
  }

  /// Lowers the closure to an assignment: unforced orbits default to false.
  ExtremalAssignment to_assignment(const GraphUniverse& u) const {
    ExtremalAssignment a;
    a.g = u.g;
    a.n = u.n;
    for (int i = 0; i < u.size(); ++i) {
      std::vector<int> sel;
      for (std::size_t o = 0; o < u.at(i).orbits.size(); ++o)
        if (values[i][o] == Tri::True)
          sel.insert(sel.end(), u.at(i).orbits[o].begin(), u.at(i).orbits[o].end());
      std::sort(sel.begin(), sel.end());
      a.table[u.at(i).form.encoding] = std::move(sel);
    }
    return a;
  }
};

/// One biconditional instance at orbit level: the target orbit is selected
/// iff every fiber orbit is. Compiled once from a relation, reused across
/// propagation runs.
struct PropagationContext {
  const GraphUniverse* universe = nullptr;

  struct Constraint {
    int target_graph = 0, target_orbit = 0;
    int source_graph = 0;
    std::vector<int> fiber_orbits;  // distinct source orbits
  };
  std::vector<Constraint> constraints;
};

inline PropagationContext make_propagation_context(const GraphUniverse& u,
                                                   const SpecializationRelation& rel) {
  PropagationContext ctx;
  ctx.universe = &u;
  std::set<std::tuple<int, int, int, std::vector<int>>> dedup;
  for (const auto& [pair, maps] : rel.maps) {
    const auto& [t, s] = pair;
    for (const auto& m : maps) {
      for (int v = 0; v < static_cast<int>(m.fibers.size()); ++v) {
        std::vector<int> fiber_orbits;
        for (int w : m.fibers[v]) fiber_orbits.push_back(u.orbit_of(s, w));
        std::sort(fiber_orbits.begin(), fiber_orbits.end());
        fiber_orbits.erase(std::unique(fiber_orbits.begin(), fiber_orbits.end()),
                           fiber_orbits.end());
        if (dedup.insert({t, u.orbit_of(t, v), s, fiber_orbits}).second)
          ctx.constraints.push_back({t, u.orbit_of(t, v), s, std::move(fiber_orbits)});
      }
    }
  }
  return ctx;
}

/// Least fixpoint of the specialization biconditional: for every map and
/// every target vertex v with fiber F, v is selected iff all of F is. True
/// and false forcings are both propagated; conflicting forcings and fully
/// selected graphs are reported as violations rather than stopping early, so
/// a contradiction comes with its full witness set.
inline PropagationResult propagate(const PropagationContext& ctx, const std::vector<Seed>& seeds) {
  const GraphUniverse& u = *ctx.universe;
  PropagationResult res;
  res.values.resize(u.size());
  for (int i = 0; i < u.size(); ++i)
    res.values[i].assign(u.at(i).orbits.size(), Tri::Unknown);

  bool changed = true;
  auto forced = [&](int g, int o, bool val) {
    const auto& table = val ? res.facts_true : res.facts_false;
    return table.count({g, o}) != 0;
  };
  auto set_value = [&](int g, int o, bool val, std::string rule,
                       std::vector<std::pair<int, int>> parents) {
    auto& table = val ? res.facts_true : res.facts_false;
    if (table.count({g, o})) return;
    table[{g, o}] = {g, o, val, std::move(rule), std::move(parents)};
    if (res.values[g][o] == Tri::Unknown) res.values[g][o] = val ? Tri::True : Tri::False;
    changed = true;
  };

  for (const auto& s : seeds) {
    const int gi = u.find(s.encoding);
    if (gi < 0) throw rejected_input("propagate: seed graph not in universe");
    if (s.vertex < 0 || s.vertex >= u.at(gi).form.graph.vertex_count())
      throw rejected_input("propagate: seed vertex out of range");
    set_value(gi, u.orbit_of(gi, s.vertex), s.value, "seed", {});
  }

  while (changed) {
    changed = false;
    for (const auto& c : ctx.constraints) {
      const int t = c.target_graph, ov = c.target_orbit, s = c.source_graph;

      if (forced(t, ov, true))
        for (int ow : c.fiber_orbits)
          set_value(s, ow, true, "selected vertex degenerates into its fiber", {{t, ov}});

      bool all_true = true;
      for (int ow : c.fiber_orbits)
        if (!forced(s, ow, true)) all_true = false;
      if (all_true && !c.fiber_orbits.empty()) {
        std::vector<std::pair<int, int>> parents;
        for (int ow : c.fiber_orbits) parents.emplace_back(s, ow);
        set_value(t, ov, true, "entire fiber selected", std::move(parents));
      }

      for (int ow : c.fiber_orbits)
        if (forced(s, ow, false))
          set_value(t, ov, false, "fiber contains an unselected vertex", {{s, ow}});

      if (forced(t, ov, false)) {
        std::vector<int> open;
        for (int ow : c.fiber_orbits)
          if (!forced(s, ow, true)) open.push_back(ow);
        if (open.size() == 1) {
          std::vector<std::pair<int, int>> parents{{t, ov}};
          for (int ow : c.fiber_orbits)
            if (ow != open.front()) parents.emplace_back(s, ow);
          set_value(s, open.front(), false,
                    "unselected vertex with all other fiber orbits selected", std::move(parents));
        }
      }
    }
  }

  for (int i = 0; i < u.size(); ++i) {
    bool all = true;
    for (std::size_t o = 0; o < u.at(i).orbits.size(); ++o) {
      if (res.facts_true.count({i, static_cast<int>(o)}) &&
          res.facts_false.count({i, static_cast<int>(o)}))
        res.violations.push_back(
            {"conflict", i, "orbit " + std::to_string(o) + " forced both selected and unselected"});
      if (!res.facts_true.count({i, static_cast<int>(o)})) all = false;
    }
    if (all)
      res.violations.push_back({"axiom1", i, "every orbit forced selected"});
  }
  res.status = res.violations.empty() ? PropagationResult::Status::Consistent
                                      : PropagationResult::Status::Contradiction;
  return res;
}

inline PropagationResult propagate(const GraphUniverse& u, const SpecializationRelation& rel,
                                   const std::vector<Seed>& seeds) {
  return propagate(make_propagation_context(u, rel), seeds);
}

/// Exhaustive backtracking over (graph, orbit) booleans with propagation as
/// the pruning engine; most-degenerate graphs are decided first.
inline std::vector<ExtremalAssignment> enumerate_assignments(const GraphUniverse& u,
                                                             const SpecializationRelation& rel,
                                                             long long node_budget = 1000000) {
  std::vector<std::pair<int, int>> order;  // (graph, orbit)
  {
    std::vector<int> graphs(u.size());
    std::iota(graphs.begin(), graphs.end(), 0);
    std::sort(graphs.begin(), graphs.end(), [&](int a, int b) {
      if (u.at(a).edge_count != u.at(b).edge_count)
        return u.at(a).edge_count > u.at(b).edge_count;
      return u.at(a).form.encoding < u.at(b).form.encoding;
    });
    for (int g : graphs) {
      std::vector<int> orbs(u.at(g).orbits.size());
      std::iota(orbs.begin(), orbs.end(), 0);
      std::sort(orbs.begin(), orbs.end(), [&](int a, int b) {
        if (u.at(g).orbits[a].size() != u.at(g).orbits[b].size())
          return u.at(g).orbits[a].size() > u.at(g).orbits[b].size();
        return a < b;
      });
      for (int o : orbs) order.emplace_back(g, o);
    }
  }

  const PropagationContext ctx = make_propagation_context(u, rel);
  std::vector<ExtremalAssignment> out;
  long long nodes = 0;
  auto rec = [&](auto&& self, std::vector<Seed> seeds) -> void {
    if (++nodes > node_budget)
      throw budget_exceeded("assignment enumeration exceeded the search budget");
    PropagationResult res = propagate(ctx, seeds);
    if (res.status == PropagationResult::Status::Contradiction) return;
    for (const auto& [g, o] : order) {
      if (res.values[g][o] != Tri::Unknown) continue;
      const int v = u.at(g).orbits[o].front();
      for (bool val : {true, false}) {
        std::vector<Seed> next = seeds;
        next.push_back({u.at(g).form.encoding, v, val});
        self(self, std::move(next));
      }
      return;
    }
    out.push_back(res.to_assignment(u));
  };
  rec(rec, {});
  std::sort(out.begin(), out.end(), [](const ExtremalAssignment& a, const ExtremalAssignment& b) {
    return a.table < b.table;
  });
  return out;
}

inline json assignment_to_json(const ExtremalAssignment& a) {
  json j;
  j["g"] = a.g;
  j["n"] = a.n;
  j["entries"] = json::array();
  for (const auto& [enc, sel] : a.table) {
    json e;
    e["graph"] = json::parse(enc);
    e["selected"] = sel;
    j["entries"].push_back(std::move(e));
  }
  return j;
}

inline ExtremalAssignment assignment_from_json(const json& j) {
  ExtremalAssignment a;
  try {
    a.g = j.at("g").get<int>();
    a.n = j.at("n").get<int>();
    for (const auto& e : j.at("entries")) {
      DualGraph g = graph_from_json(e.at("graph"));
      CanonicalForm cf = canonicalize(g);
      std::vector<int> sel = e.at("selected").get<std::vector<int>>();
      for (int& v : sel) {
        if (v < 0 || v >= g.vertex_count())
          throw rejected_input("assignment selects a vertex out of range");
        v = cf.relabeling[v];
      }
      std::sort(sel.begin(), sel.end());
      sel.erase(std::unique(sel.begin(), sel.end()), sel.end());
      a.table[cf.encoding] = std::move(sel);
    }
  } catch (const json::exception& e) {
    throw rejected_input(std::string("malformed assignment JSON: ") + e.what());
  }
  return a;
}

}  // namespace modcomp
