#include <catch2/catch_amalgamated.hpp>

#include "modcomp/modcomp.hpp"

using namespace modcomp;

namespace {

ZVec zv(std::initializer_list<long long> xs) {
  ZVec out;
  for (long long x : xs) out.push_back(Integer(x));
  return out;
}

std::set<ZVec> as_set(const std::vector<ZVec>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("double description of the positive quadrant") {
  auto cone = dual_description({zv({1, 0}), zv({0, 1})});
  CHECK(as_set(cone.rays) == as_set({zv({1, 0}), zv({0, 1})}));
  CHECK(as_set(cone.facets) == as_set({zv({1, 0}), zv({0, 1})}));
}

TEST_CASE("double description drops redundant inequalities from the facet list") {
  // x >= 0, y >= 0, x + y >= 0 (redundant)
  auto cone = dual_description({zv({1, 0}), zv({0, 1}), zv({1, 1})});
  CHECK(as_set(cone.rays) == as_set({zv({1, 0}), zv({0, 1})}));
  CHECK(as_set(cone.facets) == as_set({zv({1, 0}), zv({0, 1})}));
}

TEST_CASE("double description of a non-simplicial 3d cone") {
  // four facets of a square-based cone
  const std::vector<ZVec> rows{zv({1, 0, 1}), zv({-1, 0, 1}), zv({0, 1, 1}), zv({0, -1, 1})};
  auto cone = dual_description(rows);
  CHECK(as_set(cone.rays) == as_set({zv({1, 1, 1}), zv({1, -1, 1}), zv({-1, 1, 1}),
                                     zv({-1, -1, 1})}));
  CHECK(cone.facets.size() == 4);
}

TEST_CASE("one-dimensional cone") {
  auto cone = dual_description({zv({2}), zv({5})});
  CHECK(cone.rays == std::vector<ZVec>{zv({1})});
  CHECK(cone.facets.size() == 1);
}

TEST_CASE("rank-deficient systems are reported") {
  CHECK_THROWS_AS(dual_description({zv({1, 0}), zv({-1, 0})}), internal_consistency_error);
}

TEST_CASE("empty-interior systems are reported") {
  CHECK_THROWS_AS(dual_description({zv({1, 0}), zv({-1, 0}), zv({0, 1}), zv({0, -1})}),
                  internal_consistency_error);
}

TEST_CASE("scaled duplicate rows collapse") {
  auto cone = dual_description({zv({2, 0}), zv({4, 0}), zv({0, 3})});
  CHECK(cone.inequalities.size() == 2);
}

TEST_CASE("fourier-motzkin facets of a generated cone match known answers") {
  // cone over the square in 3d
  const std::vector<ZVec> gens{zv({1, 1, 1}), zv({1, -1, 1}), zv({-1, 1, 1}), zv({-1, -1, 1})};
  auto facets = facets_of_generated_cone(gens);
  CHECK(as_set(facets) ==
        as_set({zv({1, 0, 1}), zv({-1, 0, 1}), zv({0, 1, 1}), zv({0, -1, 1})}));
}

TEST_CASE("dual routes agree: rays of an H-cone are facet normals of its row cone") {
  const std::vector<std::vector<ZVec>> systems{
      {zv({1, 0}), zv({0, 1}), zv({1, 3}), zv({1, -1})
      },
      {zv({1, 0, 0}), zv({0, 1, 0}), zv({0, 0, 1}), zv({1, 1, -1})},
  };
  for (const auto& rows : systems) {
    auto cone = dual_description(rows);
    auto facets = facets_of_generated_cone(rows);
    CHECK(as_set(cone.rays) == as_set(facets));
  }
}
