#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "mtdist/analysis.hpp"

using namespace mtdist;
using namespace fixtures;

namespace {

DistanceMatrix fromRows(std::vector<std::vector<double>> rows) {
  DistanceMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows.size(); ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

}  // namespace

TEST_CASE("distance matrix of one and several trees") {
  CHECK(distanceMatrix({worked()}).n == 1);
  auto m = distanceMatrix({worked(), singleEdge(10), MergeTree{}});
  CHECK(m.at(0, 1) == 6.5);
  CHECK(m.at(1, 0) == 6.5);
  CHECK(m.at(0, 2) == 16.5);
  CHECK(m.at(1, 2) == 10.0);
  CHECK(validateMatrix(m).empty());
  CHECK(m.maxEntry() == 16.5);
}

TEST_CASE("worker count does not change the result") {
  std::mt19937_64 rng(71);
  std::vector<MergeTree> trees;
  for (int i = 0; i < 12; ++i) trees.push_back(mixedTree(rng, 15));
  CHECK(distanceMatrix(trees, 1) == distanceMatrix(trees, 8));
}

TEST_CASE("invalid tree is named") {
  auto bad = build({{1, 0, 1}, {2, 1, 1}});
  CHECK_THROWS_AS(distanceMatrix({worked(), bad}), TreeError);
}

TEST_CASE("matrix validation") {
  auto m = fromRows({{0, 1}, {2, 0}});
  CHECK(!validateMatrix(m).empty());
  CHECK(!validateMatrix(fromRows({{1, 1}, {1, 0}})).empty());
}

TEST_CASE("average linkage on four points") {
  // Two tight pairs far apart.
  auto m = fromRows({{0, 1, 6, 8}, {1, 0, 7, 9}, {6, 7, 0, 2}, {8, 9, 2, 0}});
  auto d = averageLinkage(m);
  REQUIRE(d.merges.size() == 3);
  CHECK(d.merges[0] == Merge{0, 1, 1.0, 4});
  CHECK(d.merges[1] == Merge{2, 3, 2.0, 5});
  CHECK(d.merges[2] == Merge{4, 5, 7.5, 6});
  CHECK(d.leaves == 4);
  CHECK_THROWS_AS(averageLinkage(DistanceMatrix{}), std::invalid_argument);
  CHECK(averageLinkage(fromRows({{0}})).merges.empty());
}

TEST_CASE("last singleton") {
  auto m = fromRows({{0, 1, 2, 9}, {1, 0, 2, 9}, {2, 2, 0, 9}, {9, 9, 9, 0}});
  CHECK(lastSingleton(averageLinkage(m)) == 3);
  CHECK(lastSingleton(averageLinkage(fromRows({{0, 1}, {1, 0}}))) == 1);
}

TEST_CASE("outlier scores are row means") {
  auto m = fromRows({{0, 1, 3}, {1, 0, 5}, {3, 5, 0}});
  CHECK(outlierScores(m) == std::vector<double>{2, 3, 4});
}

TEST_CASE("lag profile of a period three sequence") {
  std::size_t n = 9;
  DistanceMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = (i % 3 == j % 3) ? (i == j ? 0.0 : 0.1) : 1.0;
  }
  auto p = lagProfile(m);
  REQUIRE(p.size() == n - 1);
  CHECK(p[0].lag == 1);
  CHECK(p[2].lag == 3);
  CHECK(p[2].mean == doctest::Approx(0.1));
  CHECK(p[5].mean == doctest::Approx(0.1));
  CHECK(p[0].mean == 1.0);
}

TEST_CASE("export formats") {
  auto m = fromRows({{0, 0.1}, {0.1, 0}});
  CHECK(matrixToCsv(m) == "0,0.1\n0.1,0\n");
  auto svg = matrixToSvg(m);
  std::size_t rects = 0;
  for (std::size_t p = svg.find("<rect"); p != std::string::npos; p = svg.find("<rect", p + 1)) ++rects;
  CHECK(rects == 4);
  CHECK(svg.find("rgb(255,255,255)") != std::string::npos);
  CHECK(svg.find("rgb(0,0,0)") != std::string::npos);
}
