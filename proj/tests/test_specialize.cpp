#include <catch2/catch_amalgamated.hpp>

#include "modcomp/modcomp.hpp"
#include "oracles.hpp"

using namespace modcomp;

namespace {

DualGraph genus0_two_loops() {
  DualGraph g;
  g.ambient_genus = 2;
  g.vertices = {{0, {}}};
  g.edges = {{0, 0}, {0, 0}};
  return g;
}

int fiber_subgraph_b1(const ContractionMap& m, const DualGraph& source, int target_vertex) {
  // edges of the contracted set inside the fiber of target_vertex
  const auto& fiber = m.fibers[target_vertex];
  int inside = 0;
  for (int e : m.contracted_edges) {
    const auto& ed = source.edges[e];
    if (std::binary_search(fiber.begin(), fiber.end(), ed.u)) ++inside;
  }
  return inside - static_cast<int>(fiber.size()) + 1;
}

}  // namespace

TEST_CASE("contracting one theta edge leaves a genus-0 vertex with two loops") {
  auto [target, map] = contract(oracles::theta(), {0});
  CHECK(target.encoding == canonicalize(genus0_two_loops()).encoding);
  REQUIRE(map.fibers.size() == 1);
  CHECK(map.fibers[0] == std::vector<int>{0, 1});
}

TEST_CASE("contracting a loop increments the genus") {
  auto [target, map] = contract(oracles::genus1_with_loop(), {0});
  CHECK(target.encoding == canonicalize(smooth_graph(2, 0)).encoding);
}

TEST_CASE("contracting all dumbbell edges recovers the smooth graph") {
  auto [target, map] = contract(oracles::dumbbell(), {0, 1, 2});
  CHECK(target.encoding == canonicalize(smooth_graph(2, 0)).encoding);
  REQUIRE(map.fibers.size() == 1);
  CHECK(map.fibers[0].size() == 2);
}

TEST_CASE("contract rejects out-of-range edges") {
  CHECK_THROWS_AS(contract(oracles::theta(), {5}), rejected_input);
}

TEST_CASE("one-step generizations of a smooth graph are empty") {
  CHECK(one_step_generizations(smooth_graph(2, 0)).empty());
}

TEST_CASE("one-step generizations of theta: one class, three witnesses") {
  auto classes = one_step_generizations(oracles::theta());
  REQUIRE(classes.size() == 1);
  CHECK(classes[0].target.encoding == canonicalize(genus0_two_loops()).encoding);
  CHECK(classes[0].maps.size() == 3);
}

TEST_CASE("one-step generizations of the dumbbell: two outcome classes") {
  auto classes = one_step_generizations(oracles::dumbbell());
  REQUIRE(classes.size() == 2);
  // contracting the bridge merges the loop vertices; contracting either loop
  // gives (genus-1)--(genus-0 with loop)
  DualGraph mixed;
  mixed.ambient_genus = 2;
  mixed.vertices = {{0, {}}, {1, {}}};
  mixed.edges = {{0, 0}, {0, 1}};
  std::set<std::string> targets;
  std::size_t witnesses = 0;
  for (const auto& cls : classes) {
    targets.insert(cls.target.encoding);
    witnesses += cls.maps.size();
  }
  CHECK(witnesses == 3);
  CHECK(targets.count(canonicalize(genus0_two_loops()).encoding) == 1);
  CHECK(targets.count(canonicalize(mixed).encoding) == 1);
}

TEST_CASE("specialization maps: smooth genus 2 from the dumbbell") {
  auto maps = specialization_maps(smooth_graph(2, 0), oracles::dumbbell());
  REQUIRE(maps.size() == 1);
  CHECK(maps[0].fibers == std::vector<std::vector<int>>{{0, 1}});
}

TEST_CASE("specialization maps: genus-1-with-loop from theta") {
  auto maps = specialization_maps(oracles::genus1_with_loop(), oracles::theta());
  REQUIRE(maps.size() == 1);
  CHECK(maps[0].contracted_edges.size() == 2);
  CHECK(maps[0].fibers == std::vector<std::vector<int>>{{0, 1}});
}

TEST_CASE("theta and dumbbell do not specialize to each other") {
  CHECK(specialization_maps(oracles::theta(), oracles::dumbbell()).empty());
  CHECK(specialization_maps(oracles::dumbbell(), oracles::theta()).empty());
}

TEST_CASE("specialization maps require matching type") {
  CHECK_THROWS_AS(specialization_maps(smooth_graph(2, 0), smooth_graph(3, 0)), rejected_input);
}

TEST_CASE("the (1,1) relation has exactly one nontrivial pair") {
  GraphUniverse u = stable_graphs(1, 1);
  auto rel = specialization_relation(u);
  int nontrivial = 0;
  for (const auto& [pair, maps] : rel.maps) {
    if (pair.first == pair.second) {
      REQUIRE(maps.size() == 1);
      CHECK(maps[0].contracted_edges.empty());
    } else {
      ++nontrivial;
      CHECK(maps.size() == 1);
    }
  }
  CHECK(nontrivial == 1);
}

TEST_CASE("maps only go from more edges to fewer") {
  GraphUniverse u = stable_graphs(2, 0);
  auto rel = specialization_relation(u);
  for (const auto& [pair, maps] : rel.maps) {
    const auto& [t, s] = pair;
    if (t != s) CHECK(u.at(t).edge_count < u.at(s).edge_count);
    for (const auto& m : maps)
      CHECK(u.at(s).edge_count - static_cast<int>(m.contracted_edges.size()) ==
            u.at(t).edge_count);
  }
}

TEST_CASE("a two-vertex graph can specialize to a four-vertex graph with split fibers") {
  // both generic components degenerate into two pieces each
  GraphUniverse u = stable_graphs(3, 0);
  auto rel = specialization_relation(u);
  bool found = false;
  for (const auto& [pair, maps] : rel.maps) {
    const auto& [t, s] = pair;
    if (u.at(t).form.graph.vertex_count() != 2 || u.at(s).form.graph.vertex_count() != 4)
      continue;
    for (const auto& m : maps)
      if (m.fibers[0].size() == 2 && m.fibers[1].size() == 2) found = true;
  }
  CHECK(found);
}

TEST_CASE("round trip: re-contracting a map's edges reproduces its target") {
  for (auto [g, n] : {std::pair{2, 0}, {1, 2}}) {
    GraphUniverse u = stable_graphs(g, n);
    auto rel = specialization_relation(u);
    for (const auto& [pair, maps] : rel.maps) {
      const auto& [t, s] = pair;
      const DualGraph& source = u.at(s).form.graph;
      for (const auto& m : maps) {
        auto [back, m2] = contract(source, m.contracted_edges);
        CHECK(back.encoding == m.target_encoding);
        // fibers partition the source vertex set
        std::set<int> all;
        for (const auto& f : m.fibers) {
          CHECK_FALSE(f.empty());
          all.insert(f.begin(), f.end());
        }
        CHECK(static_cast<int>(all.size()) == source.vertex_count());
        // genus additivity with the fiber subgraph's first Betti number
        const DualGraph& target = u.at(t).form.graph;
        for (int v = 0; v < target.vertex_count(); ++v) {
          int genus_sum = 0;
          for (int w : m.fibers[v]) genus_sum += source.vertices[w].genus;
          CHECK(target.vertices[v].genus == genus_sum + fiber_subgraph_b1(m, source, v));
        }
      }
    }
  }
}

TEST_CASE("composition: specializations compose with united fibers") {
  for (auto [g, n] : {std::pair{2, 0}, {1, 2}}) {
    GraphUniverse u = stable_graphs(g, n);
    auto rel = specialization_relation(u);
    for (const auto& [pair1, maps1] : rel.maps) {
      const auto& [t, mid] = pair1;
      for (const auto& [pair2, maps2] : rel.maps) {
        if (pair2.first != mid) continue;
        const int s = pair2.second;
        const auto* direct = rel.find(t, s);
        REQUIRE(direct != nullptr);
        for (const auto& m1 : maps1) {
          for (const auto& m2 : maps2) {
            // composed fiber structure: union of m2-fibers over m1-fibers
            std::vector<std::vector<int>> composed(m1.fibers.size());
            for (std::size_t v = 0; v < m1.fibers.size(); ++v) {
              for (int w : m1.fibers[v])
                composed[v].insert(composed[v].end(), m2.fibers[w].begin(), m2.fibers[w].end());
              std::sort(composed[v].begin(), composed[v].end());
            }
            const std::string key = detail::fiber_orbit_key(
                composed, u.at(t).automorphisms, u.at(s).automorphisms);
            bool matched = false;
            for (const auto& m3 : *direct)
              if (detail::fiber_orbit_key(m3.fibers, u.at(t).automorphisms,
                                          u.at(s).automorphisms) == key)
                matched = true;
            CHECK(matched);
          }
        }
      }
    }
  }
}

TEST_CASE("contraction map JSON export shape") {
  auto [target, map] = contract(oracles::theta(), {0});
  json j = contraction_map_to_json(map);
  CHECK(j.at("source") == json::parse(map.source_encoding));
  CHECK(j.at("target") == json::parse(map.target_encoding));
  CHECK(j.at("edges").size() == 1);
  CHECK(j.at("fibers").size() == 1);
}
