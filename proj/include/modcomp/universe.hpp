#pragma once

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "modcomp/canonical.hpp"
#include "modcomp/dual_graph.hpp"
#include "modcomp/errors.hpp"

namespace modcomp {

inline constexpr int kDefaultBudget = 9;  // max allowed 3g-3+n

inline int boundary_dimension(int g, int n) { return 3 * g - 3 + n; }

inline bool stable_type(int g, int n) { return 2 * g - 2 + n > 0; }

/// All one-edge degenerations of a stable dual graph: vertex splits (the new
/// node joins the two halves) and genus-drops that add a loop. Results are
/// stable by construction except for splits, which are filtered.
inline std::vector<DualGraph> one_step_degenerations(const DualGraph& g) {
  std::vector<DualGraph> out;

  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.vertices[v].genus >= 1) {
      DualGraph h = g;
      h.vertices[v].genus -= 1;
      h.add_edge(v, v);
      out.push_back(std::move(h));
    }
  }

  for (int v = 0; v < g.vertex_count(); ++v) {
    const VertexLabel& label = g.vertices[v];
    std::vector<int> plain;  // indices of non-loop edges at v
    std::vector<int> loops;
    std::vector<GraphEdge> others;
    for (int e = 0; e < g.edge_count(); ++e) {
      const auto& ed = g.edges[e];
      if (ed.u == v && ed.v == v)
        loops.push_back(e);
      else if (ed.u == v || ed.v == v)
        plain.push_back(e);
      else
        others.push_back(ed);
    }
    const int nv = g.vertex_count();  // index of the split-off half
    const int marks = static_cast<int>(label.markings.size());
    long long loop_ways = 1;
    for (std::size_t i = 0; i < loops.size(); ++i) loop_ways *= 3;

    for (int h1 = 0; h1 <= label.genus; ++h1) {
      for (int mmask = 0; mmask < (1 << marks); ++mmask) {
        for (int emask = 0; emask < (1 << plain.size()); ++emask) {
          for (long long lcode = 0; lcode < loop_ways; ++lcode) {
            DualGraph h;
            h.ambient_genus = g.ambient_genus;
            h.marking_count = g.marking_count;
            h.vertices = g.vertices;
            h.vertices[v].genus = h1;
            h.vertices[v].markings.clear();
            VertexLabel split;
            split.genus = label.genus - h1;
            for (int i = 0; i < marks; ++i) {
              if (mmask & (1 << i))
                split.markings.push_back(label.markings[i]);
              else
                h.vertices[v].markings.push_back(label.markings[i]);
            }
            h.vertices.push_back(std::move(split));
            h.edges = others;
            for (std::size_t i = 0; i < plain.size(); ++i) {
              const auto& ed = g.edges[plain[i]];
              const int other = ed.u == v ? ed.v : ed.u;
              const int at = (emask & (1 << i)) ? nv : v;
              h.edges.push_back(make_edge(at, other));
            }
            long long code = lcode;
            for (std::size_t i = 0; i < loops.size(); ++i) {
              switch (code % 3) {
                case 0: h.edges.push_back(make_edge(v, v)); break;
                case 1: h.edges.push_back(make_edge(nv, nv)); break;
                default: h.edges.push_back(make_edge(v, nv)); break;
              }
              code /= 3;
            }
            h.edges.push_back(make_edge(v, nv));
            std::sort(h.edges.begin(), h.edges.end());
            auto stable_at = [&](int w) {
              return 2 * h.vertices[w].genus - 2 + h.valence(w) +
                         static_cast<int>(h.vertices[w].markings.size()) > 0;
            };
            if (!stable_at(v) || !stable_at(nv)) continue;
            out.push_back(std::move(h));
          }
        }
      }
    }
  }
  return out;
}

struct UniverseEntry {
  CanonicalForm form;
  std::vector<std::vector<int>> automorphisms;
  std::vector<std::vector<int>> orbits;
  int edge_count = 0;
};

/// The complete set of stable dual graphs of type (g,n), one canonical
/// representative per isomorphism class, sorted by (edge count, encoding).
struct GraphUniverse {
  int g = 0;
  int n = 0;
  std::vector<UniverseEntry> entries;
  std::map<std::string, int> index_by_encoding;

  int size() const { return static_cast<int>(entries.size()); }

  int find(const std::string& encoding) const {
    auto it = index_by_encoding.find(encoding);
    return it == index_by_encoding.end() ? -1 : it->second;
  }

  const UniverseEntry& at(int i) const { return entries.at(static_cast<std::size_t>(i)); }

  /// Orbit index containing a given canonical vertex of a given graph.
  int orbit_of(int graph, int vertex) const {
    const auto& orbits = at(graph).orbits;
    for (int o = 0; o < static_cast<int>(orbits.size()); ++o)
      if (std::binary_search(orbits[o].begin(), orbits[o].end(), vertex)) return o;
    throw rejected_input("vertex out of range");
  }
};

namespace detail {

inline GraphUniverse index_universe(int g, int n, std::vector<CanonicalForm> forms) {
  std::sort(forms.begin(), forms.end(), [](const CanonicalForm& a, const CanonicalForm& b) {
    if (a.graph.edge_count() != b.graph.edge_count())
      return a.graph.edge_count() < b.graph.edge_count();
    return a.encoding < b.encoding;
  });
  GraphUniverse u;
  u.g = g;
  u.n = n;
  for (auto& f : forms) {
    UniverseEntry e;
    e.edge_count = f.graph.edge_count();
    e.automorphisms = automorphisms(f.graph);
    e.orbits = vertex_orbits(f.graph);
    e.form = std::move(f);
    u.index_by_encoding[e.form.encoding] = static_cast<int>(u.entries.size());
    u.entries.push_back(std::move(e));
  }
  return u;
}

}  // namespace detail

/// Worklist closure of the smooth graph under one-step degenerations,
/// deduplicated by canonical encoding.
inline GraphUniverse stable_graphs(int g, int n, int budget = kDefaultBudget) {
  if (!stable_type(g, n))
    throw rejected_input("(g,n)=(" + std::to_string(g) + "," + std::to_string(n) +
                         ") is not a stable type");
  if (boundary_dimension(g, n) > budget)
    throw budget_exceeded("3g-3+n = " + std::to_string(boundary_dimension(g, n)) +
                          " exceeds budget " + std::to_string(budget));

  std::map<std::string, CanonicalForm> seen;
  std::deque<DualGraph> work;
  CanonicalForm smooth = canonicalize(smooth_graph(g, n));
  work.push_back(smooth.graph);
  seen.emplace(smooth.encoding, std::move(smooth));
  while (!work.empty()) {
    DualGraph cur = std::move(work.front());
    work.pop_front();
    for (auto& next : one_step_degenerations(cur)) {
      CanonicalForm cf = canonicalize(next);
      if (seen.count(cf.encoding)) continue;
      work.push_back(cf.graph);
      seen.emplace(cf.encoding, std::move(cf));
    }
  }
  std::vector<CanonicalForm> forms;
  forms.reserve(seen.size());
  for (auto& [enc, cf] : seen) forms.push_back(std::move(cf));
  return detail::index_universe(g, n, std::move(forms));
}

/// Indices of the maximally degenerate strata: exactly 3g-3+n edges.
inline std::vector<int> zero_strata(const GraphUniverse& u) {
  std::vector<int> out;
  const int top = boundary_dimension(u.g, u.n);
  for (int i = 0; i < u.size(); ++i)
    if (u.at(i).edge_count == top) out.push_back(i);
  return out;
}

// ---------------------------------------------------------------------------
// Universe cache: JSON-lines, one canonical graph per line, under
// $MODCOMP_CACHE (default .modcomp-cache/). A stale or corrupt file is
// regenerated; staleness is detected by re-canonicalizing each line.

inline std::filesystem::path cache_directory() {
  if (const char* env = std::getenv("MODCOMP_CACHE")) return std::filesystem::path(env);
  return std::filesystem::path(".modcomp-cache");
}

inline std::filesystem::path cache_file(int g, int n) {
  return cache_directory() /
         ("stable_graphs_g" + std::to_string(g) + "_n" + std::to_string(n) + ".jsonl");
}

inline void write_cache(const GraphUniverse& u) {
  std::filesystem::create_directories(cache_directory());
  const auto path = cache_file(u.g, u.n);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    for (const auto& e : u.entries) out << e.form.encoding << "\n";
  }
  std::filesystem::rename(tmp, path);
}

inline GraphUniverse stable_graphs_cached(int g, int n, int budget = kDefaultBudget) {
  const auto path = cache_file(g, n);
  if (std::filesystem::exists(path)) {
    std::vector<CanonicalForm> forms;
    std::set<std::string> dup;
    bool good = true;
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      try {
        DualGraph parsed = graph_from_json(json::parse(line));
        if (parsed.ambient_genus != g || parsed.marking_count != n) {
          good = false;
          break;
        }
        CanonicalForm cf = canonicalize(parsed);
        if (cf.encoding != line || !dup.insert(cf.encoding).second) {
          good = false;  // stale format or duplicate line
          break;
        }
        forms.push_back(std::move(cf));
      } catch (const std::exception&) {
        good = false;
        break;
      }
    }
    if (good && !forms.empty()) return detail::index_universe(g, n, std::move(forms));
  }
  GraphUniverse u = stable_graphs(g, n, budget);
  write_cache(u);
  return u;
}

}  // namespace modcomp
