#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>

#include "modcomp/modcomp.hpp"
#include "oracles.hpp"

using namespace modcomp;

TEST_CASE("stable_graphs rejects unstable types and enforces the budget") {
  CHECK_THROWS_AS(stable_graphs(0, 2), rejected_input);
  CHECK_THROWS_AS(stable_graphs(1, 0), rejected_input);
  CHECK_THROWS_AS(stable_graphs(9, 0), budget_exceeded);
}

TEST_CASE("the (0,3) universe is a single smooth graph") {
  GraphUniverse u = stable_graphs(0, 3);
  REQUIRE(u.size() == 1);
  CHECK(u.at(0).form.encoding == canonicalize(smooth_graph(0, 3)).encoding);
}

TEST_CASE("the (1,1) universe has the smooth curve and the loop graph") {
  GraphUniverse u = stable_graphs(1, 1);
  REQUIRE(u.size() == 2);
  DualGraph loop;
  loop.ambient_genus = 1;
  loop.marking_count = 1;
  loop.vertices = {{0, {1}}};
  loop.edges = {{0, 0}};
  CHECK(u.find(canonicalize(smooth_graph(1, 1)).encoding) >= 0);
  CHECK(u.find(canonicalize(loop).encoding) >= 0);
}

TEST_CASE("the (2,0) universe has seven graphs") {
  GraphUniverse u = stable_graphs(2, 0);
  CHECK(u.size() == 7);
}

TEST_CASE("every universe member is valid and unique") {
  for (auto [g, n] : {std::pair{2, 0}, {1, 2}, {0, 5}}) {
    GraphUniverse u = stable_graphs(g, n);
    std::set<std::string> seen;
    for (const auto& e : u.entries) {
      CHECK(validate(e.form.graph).ok());
      CHECK(seen.insert(e.form.encoding).second);
      CHECK(e.edge_count <= boundary_dimension(g, n));
    }
  }
}

TEST_CASE("zero strata of (2,0) are theta and the dumbbell") {
  GraphUniverse u = stable_graphs(2, 0);
  auto strata = zero_strata(u);
  REQUIRE(strata.size() == 2);
  std::set<std::string> got;
  for (int i : strata) got.insert(u.at(i).form.encoding);
  CHECK(got.count(canonicalize(oracles::theta()).encoding) == 1);
  CHECK(got.count(canonicalize(oracles::dumbbell()).encoding) == 1);
}

TEST_CASE("zero strata counts for (2,1) and (0,4)") {
  CHECK(zero_strata(stable_graphs(2, 1)).size() == 3);

  GraphUniverse u04 = stable_graphs(0, 4);
  auto strata = zero_strata(u04);
  CHECK(strata.size() == 3);
  for (int i : strata) {
    const DualGraph& g = u04.at(i).form.graph;
    CHECK(g.vertex_count() == 2);
    CHECK(g.vertices[0].markings.size() == 2);
    CHECK(g.vertices[1].markings.size() == 2);
  }
}

TEST_CASE("zero-strata characterization: top edge count iff all-rational trivalent") {
  for (auto [g, n] : {std::pair{2, 0}, {2, 1}, {1, 2}, {0, 5}, {3, 0}}) {
    GraphUniverse u = stable_graphs(g, n);
    for (const auto& e : u.entries) {
      bool trivalent = true;
      for (int v = 0; v < e.form.graph.vertex_count(); ++v) {
        const auto& vl = e.form.graph.vertices[v];
        if (vl.genus != 0 ||
            e.form.graph.valence(v) + static_cast<int>(vl.markings.size()) != 3)
          trivalent = false;
      }
      CHECK((e.edge_count == boundary_dimension(g, n)) == trivalent);
    }
  }
}

TEST_CASE("universes are closed under one-step generization") {
  for (auto [g, n] : {std::pair{2, 0}, {1, 2}}) {
    GraphUniverse u = stable_graphs(g, n);
    for (const auto& e : u.entries)
      for (const auto& cls : one_step_generizations(e.form.graph))
        CHECK(u.find(cls.target.encoding) >= 0);
  }
}

TEST_CASE("worklist generator agrees with the direct generator on small types") {
  for (auto [g, n] : {std::pair{1, 1}, {1, 2}, {0, 4}, {0, 5}, {2, 0}, {2, 1}}) {
    GraphUniverse u = stable_graphs(g, n);
    std::set<std::string> ours;
    for (const auto& e : u.entries) ours.insert(e.form.encoding);
    CHECK(ours == oracles::direct_universe_encodings(g, n));
  }
}

TEST_CASE("universe cache round-trips and survives corruption") {
  const auto dir = std::filesystem::temp_directory_path() / "modcomp-cache-test";
  std::filesystem::remove_all(dir);
  setenv("MODCOMP_CACHE", dir.c_str(), 1);

  GraphUniverse first = stable_graphs_cached(2, 0);
  CHECK(std::filesystem::exists(cache_file(2, 0)));
  GraphUniverse second = stable_graphs_cached(2, 0);
  REQUIRE(first.size() == second.size());
  for (int i = 0; i < first.size(); ++i)
    CHECK(first.at(i).form.encoding == second.at(i).form.encoding);

  {  // corrupt the file; the loader must regenerate
    std::ofstream out(cache_file(2, 0), std::ios::app);
    out << "{\"bogus\":true}\n";
  }
  GraphUniverse third = stable_graphs_cached(2, 0);
  CHECK(third.size() == first.size());

  unsetenv("MODCOMP_CACHE");
  std::filesystem::remove_all(dir);
}
