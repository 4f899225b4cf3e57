#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "mtdist/oracle.hpp"

using namespace mtdist;
using namespace fixtures;

namespace {

std::uint64_t enumerated(const MergeTree& a, const MergeTree& b) {
  std::uint64_t n = 0;
  enumerateMappings(a, b, [&](const PathMapping& m) {
    CHECK(validateMapping(a, b, m).empty());
    ++n;
  });
  return n;
}

}  // namespace

TEST_CASE("mapping counts of tiny trees") {
  CHECK(enumerated(MergeTree{}, MergeTree{}) == 1);
  CHECK(countMappings(MergeTree{}, MergeTree{}) == 1);
  CHECK(enumerated(singleEdge(1), singleEdge(2)) == 2);
  CHECK(countMappings(singleEdge(1), singleEdge(2)) == 2);
  auto cherry = build({{1, 0, 1}, {2, 1, 1}, {3, 1, 1}});
  CHECK(enumerated(singleEdge(1), cherry) == 4);
  CHECK(countMappings(singleEdge(1), cherry) == 4);
}

TEST_CASE("exhaustive distance on known pairs") {
  CHECK(bruteForceDistance(worked(), singleEdge(10)) == 6.5);
  CHECK(bruteForceDistance(singleEdge(3), singleEdge(5)) == 2.0);
  CHECK(bruteForceDistance(worked(), MergeTree{}) == 16.5);
}

TEST_CASE("size guard") {
  auto big = randomTree(1, 9);
  REQUIRE(big.edgeCount() > kOracleMaxEdges);
  CHECK_THROWS_AS(bruteForceDistance(big, singleEdge(1)), OracleLimitError);
  CHECK_THROWS_AS(countMappings(singleEdge(1), big), OracleLimitError);
}

TEST_CASE("random trees") {
  CHECK(randomTree(5, 0).isEmpty());
  CHECK(randomTree(5, 1).edgeCount() == 1);
  CHECK(canonicalForm(randomTree(9, 11)) == canonicalForm(randomTree(9, 11)));
  CHECK(canonicalForm(randomTree(9, 11)) != canonicalForm(randomTree(10, 11)));
  for (std::size_t e = 1; e <= 40; ++e) {
    auto bin = randomTree(e, e, 2);
    CHECK(validate(bin).empty());
    CHECK(bin.edgeCount() == (e % 2 ? e : e - 1));
    auto tri = randomTree(e, e, 3);
    CHECK(validate(tri).empty());
    CHECK(tri.edgeCount() <= e);
    CHECK(tri.edgeCount() + 1 >= e);
    for (const auto& edge : tri.edges()) {
      CHECK(edge.label > 0.0);
      CHECK(edge.label <= 10.0);
      CHECK(tri.children(edge.child).size() <= 3);
    }
  }
  CHECK_THROWS_AS(mtdist::randomTree({1, 5, 3.0, 2.0, 2}), TreeError);
}

TEST_CASE("property: enumeration and counting agree") {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 40; ++i) {
    auto a = mixedTree(rng, 6), b = mixedTree(rng, 6);
    CHECK(enumerated(a, b) == countMappings(a, b));
    CHECK(countMappings(a, b) == countMappings(b, a));
  }
}

TEST_CASE("property: exhaustive distance is symmetric") {
  std::mt19937_64 rng(52);
  for (int i = 0; i < 40; ++i) {
    auto a = mixedTree(rng, 6), b = mixedTree(rng, 6);
    CHECK(std::abs(bruteForceDistance(a, b) - bruteForceDistance(b, a)) <= 1e-12);
  }
}
