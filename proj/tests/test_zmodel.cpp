#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "modcomp/modcomp.hpp"
#include "oracles.hpp"

using namespace modcomp;

namespace {

// independent oracle: arithmetic genus of a subcurve via Euler characteristics
// of its connected pieces
int pa_by_euler(const DualGraph& g, const std::vector<int>& subset) {
  auto pieces = subcurve_components(g, subset);
  int pa = 1 - static_cast<int>(pieces.size());
  for (const auto& piece : pieces) {
    int genus = 0, internal = 0;
    for (int v : piece) genus += g.vertices[v].genus;
    for (const auto& e : g.edges)
      if (std::binary_search(piece.begin(), piece.end(), e.u) &&
          std::binary_search(piece.begin(), piece.end(), e.v))
        ++internal;
    // chi(O) = #components - #nodes - sum g  for a connected nodal curve
    const int chi = static_cast<int>(piece.size()) - internal - genus;
    pa += 1 - chi;
  }
  return pa;
}

}  // namespace

TEST_CASE("subcurve invariants of an elliptic bridge") {
  DualGraph g;  // (1)--(1)--(1) chain: middle vertex is an elliptic bridge
  g.ambient_genus = 3;
  g.vertices = {{1, {}}, {1, {}}, {1, {}}};
  g.edges = {{0, 1}, {1, 2}};
  CHECK(subcurve_invariants(g, {1}) == SubcurveInvariants{1, 2, 0});
}

TEST_CASE("subcurve invariants of the rational spine") {
  const DualGraph g = oracles::spine_with_three_tails();
  CHECK(subcurve_invariants(g, {0}) == SubcurveInvariants{0, 3, 0});
}

TEST_CASE("a disconnected pair of elliptic tails has genus one") {
  const DualGraph g = oracles::spine_with_three_tails();
  CHECK(subcurve_invariants(g, {1, 2}) == SubcurveInvariants{1, 2, 0});
}

TEST_CASE("subcurve invariants agree with the Euler-characteristic oracle") {
  for (auto [g, n] : {std::pair{2, 1}, {3, 0}}) {
    GraphUniverse u = stable_graphs(g, n);
    for (const auto& e : u.entries) {
      const DualGraph& gr = e.form.graph;
      const int nv = gr.vertex_count();
      for (unsigned mask = 1; mask + 1 < (1u << nv); ++mask) {
        std::vector<int> subset;
        for (int v = 0; v < nv; ++v)
          if (mask & (1u << v)) subset.push_back(v);
        CHECK(subcurve_invariants(gr, subset).pa == pa_by_euler(gr, subset));
      }
    }
  }
}

TEST_CASE("subcurve invariants reject empty and full subsets") {
  const DualGraph g = oracles::theta();
  CHECK_THROWS_AS(subcurve_invariants(g, {}), rejected_input);
  CHECK_THROWS_AS(subcurve_invariants(g, {0, 1}), rejected_input);
}

TEST_CASE("contracting an elliptic tail yields a cusp point") {
  const DualGraph g = oracles::genus2_with_tail();
  const int tail = g.vertices[0].genus == 1 ? 0 : 1;
  auto model = contract_model(g, {tail});
  REQUIRE(model.components.size() == 1);
  CHECK(model.components[0].genus == 2);
  REQUIRE(model.points.size() == 1);
  CHECK(model.points[0].g == 1);
  CHECK(model.points[0].m == 1);
  CHECK(singularity_catalog(1, 1).known_classes == std::vector<std::string>{"cusp"});
}

TEST_CASE("contracting the spine yields a rational triple point joining the tails") {
  auto model = contract_model(oracles::spine_with_three_tails(), {0});
  REQUIRE(model.points.size() == 1);
  CHECK(model.points[0].g == 0);
  CHECK(model.points[0].m == 3);
  CHECK(model.points[0].branches == std::vector<int>{0, 1, 2});
  CHECK(model.components.size() == 3);
}

TEST_CASE("contracting a marked rational tail absorbs its markings at a smooth point") {
  DualGraph g;  // (1)--(0 with {1,2})
  g.ambient_genus = 1;
  g.marking_count = 2;
  g.vertices = {{1, {}}, {0, {1, 2}}};
  g.edges = {{0, 1}};
  auto model = contract_model(g, {1});
  REQUIRE(model.points.size() == 1);
  CHECK(model.points[0].g == 0);
  CHECK(model.points[0].m == 1);
  CHECK(model.points[0].markings == std::vector<int>{1, 2});
  CHECK(singularity_catalog(0, 1).known_classes == std::vector<std::string>{"smooth point"});
}

TEST_CASE("contract_model with nothing selected reproduces the graph as nodes") {
  const DualGraph g = oracles::dumbbell();
  auto model = contract_model(g, {});
  CHECK(model.points.empty());
  CHECK(model.components.size() == 2);
  CHECK(model.nodes.size() == 3);
  CHECK(model_genus(model) == 2);
}

TEST_CASE("contract_model rejects contracting everything") {
  CHECK_THROWS_AS(contract_model(oracles::theta(), {0, 1}), rejected_input);
}

TEST_CASE("genus conservation holds for every proper orbit-closed selection") {
  for (auto [g, n] : {std::pair{2, 0}, {1, 2}}) {
    GraphUniverse u = stable_graphs(g, n);
    for (const auto& e : u.entries) {
      const auto& orbits = e.orbits;
      const int no = static_cast<int>(orbits.size());
      for (unsigned mask = 0; mask < (1u << no); ++mask) {
        std::vector<int> sel;
        for (int o = 0; o < no; ++o)
          if (mask & (1u << o)) sel.insert(sel.end(), orbits[o].begin(), orbits[o].end());
        if (static_cast<int>(sel.size()) == e.form.graph.vertex_count()) continue;
        std::sort(sel.begin(), sel.end());
        CHECK(model_genus(contract_model(e.form.graph, sel)) == g);
      }
    }
  }
}

TEST_CASE("admits_contraction finds the tail witness") {
  const DualGraph g = oracles::genus2_with_tail();
  const int tail = g.vertices[0].genus == 1 ? 0 : 1;
  auto model = contract_model(g, {tail});
  auto witness = admits_contraction(g, model);
  REQUIRE(witness.has_value());
  CHECK(*witness == std::vector<int>{tail});
}

TEST_CASE("a smooth genus-3 graph admits no contraction to the cusp model") {
  auto model = contract_model(oracles::genus2_with_tail(), {1});
  CHECK_FALSE(admits_contraction(smooth_graph(3, 0), model).has_value());
}

TEST_CASE("a (1,2) point on a genus-1 component is witnessed by the bridge ring") {
  SingularModelGraph m;
  m.ambient_genus = 3;
  m.components = {{1, {}}};
  m.points = {{1, 2, {}, {0, 0}}};
  auto witness = admits_contraction(oracles::ring_of_two_elliptic_bridges(), m);
  REQUIRE(witness.has_value());
  CHECK(witness->size() == 1);
  // scan all genus-3 graphs: some graph admits it, the smooth one does not
  GraphUniverse u = stable_graphs(3, 0);
  int admitting = 0;
  for (const auto& e : u.entries)
    if (admits_contraction(e.form.graph, m).has_value()) ++admitting;
  CHECK(admitting > 0);
}

TEST_CASE("round trip: contract_model of the found witness is isomorphic to the model") {
  GraphUniverse u = stable_graphs(2, 1);
  for (const auto& e : u.entries) {
    const auto& orbits = e.orbits;
    const int no = static_cast<int>(orbits.size());
    for (unsigned mask = 0; mask < (1u << no); ++mask) {
      std::vector<int> sel;
      for (int o = 0; o < no; ++o)
        if (mask & (1u << o)) sel.insert(sel.end(), orbits[o].begin(), orbits[o].end());
      if (static_cast<int>(sel.size()) == e.form.graph.vertex_count()) continue;
      std::sort(sel.begin(), sel.end());
      auto model = contract_model(e.form.graph, sel);
      auto witness = admits_contraction(e.form.graph, model);
      REQUIRE(witness.has_value());
      CHECK(models_isomorphic(contract_model(e.form.graph, *witness), model));
    }
  }
}

TEST_CASE("model isomorphism is invariant under component reordering") {
  auto model = contract_model(oracles::spine_with_three_tails(), {0});
  SingularModelGraph shuffled = model;
  std::swap(shuffled.components[0], shuffled.components[2]);
  CHECK(models_isomorphic(model, shuffled));
}

TEST_CASE("singularity catalog entries") {
  CHECK(singularity_catalog(0, 2).known_classes == std::vector<std::string>{"node"});
  CHECK(singularity_catalog(0, 2).coverage == SingularityType::Coverage::Exhaustive);
  CHECK(singularity_catalog(0, 3).known_classes ==
        std::vector<std::string>{"rational triple point"});
  CHECK(singularity_catalog(0, 5).known_classes ==
        std::vector<std::string>{"rational 5-fold point"});
  CHECK(singularity_catalog(1, 1).coverage == SingularityType::Coverage::Exhaustive);
  CHECK(singularity_catalog(1, 2).known_classes ==
        std::vector<std::string>{"tacnode", "cusp with transverse smooth branch"});
  CHECK(singularity_catalog(1, 2).coverage == SingularityType::Coverage::ExhibitedOnly);
  CHECK(singularity_catalog(2, 1).known_classes.empty());
  CHECK(singularity_catalog(2, 1).coverage == SingularityType::Coverage::Uncataloged);
  CHECK_THROWS_AS(singularity_catalog(1, 0), rejected_input);
}

TEST_CASE("z-stable summaries") {
  GraphUniverse u3 = stable_graphs(3, 0);
  auto rel3 = specialization_relation(u3);
  CHECK(zstable_summary(elliptic_tails_assignment(u3), u3, rel3) ==
        std::vector<std::tuple<int, int, int>>{{1, 1, 0}});
  CHECK(zstable_summary(trivial_assignment(u3), u3, rel3).empty());

  GraphUniverse u21 = stable_graphs(2, 1);
  auto rel21 = specialization_relation(u21);
  // frozen from the exhaustive scan over the (2,1) universe: the unmarked
  // assignment contracts rational triple points, elliptic tails, and
  // elliptic bridges; no genus-2 subcurve is ever unmarked here, because its
  // complement would have to be a marked rational tail with too few special
  // points to be stable
  CHECK(zstable_summary(unmarked_assignment(u21), u21, rel21) ==
        std::vector<std::tuple<int, int, int>>{{0, 3, 0}, {1, 1, 0}, {1, 2, 0}});

  GraphUniverse u20 = stable_graphs(2, 0);
  auto rel20 = specialization_relation(u20);
  CHECK_THROWS_AS(zstable_summary(unmarked_assignment(u20), u20, rel20), rejected_input);
}

TEST_CASE("summary types are independent of the witnessing graph") {
  // recompute per graph: each type seen anywhere matches a per-graph scan
  GraphUniverse u = stable_graphs(2, 1);
  auto rel = specialization_relation(u);
  auto a = unmarked_assignment(u);
  auto types = zstable_summary(a, u, rel);
  std::set<std::tuple<int, int, int>> per_graph;
  for (const auto& e : u.entries) {
    const auto& sel = a.table.at(e.form.encoding);
    if (sel.empty()) continue;
    for (const auto& piece : subcurve_components(e.form.graph, sel)) {
      auto inv = subcurve_invariants(e.form.graph, piece);
      per_graph.insert({inv.pa, inv.m, inv.l});
    }
  }
  CHECK(std::set<std::tuple<int, int, int>>(types.begin(), types.end()) == per_graph);
}

TEST_CASE("model JSON round trip") {
  auto model = contract_model(oracles::spine_with_three_tails(), {0});
  CHECK(models_isomorphic(model_from_json(model_to_json(model)), model));
  CHECK(model_encoding(model_from_json(json::parse(model_encoding(model)))) ==
        model_encoding(model));
}

TEST_CASE("model JSON rejects inconsistent incidences") {
  auto model = contract_model(oracles::spine_with_three_tails(), {0});
  json bad_branch = model_to_json(model);
  bad_branch["points"][0]["branches"] = {0, 1, 7};
  CHECK_THROWS_AS(model_from_json(bad_branch), rejected_input);
  json bad_count = model_to_json(model);
  bad_count["points"][0]["m"] = 5;
  CHECK_THROWS_AS(model_from_json(bad_count), rejected_input);
  json bad_node = model_to_json(model);
  bad_node["nodes"].push_back(json::array({0, 9}));
  CHECK_THROWS_AS(model_from_json(bad_node), rejected_input);
}
