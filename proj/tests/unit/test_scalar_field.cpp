#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "mtdist/distance.hpp"
#include "mtdist/scalar_field.hpp"

using namespace mtdist;

namespace {

ScalarGrid line(std::vector<double> v) {
  std::size_t n = v.size();
  return ScalarGrid::make(1, n, std::move(v));
}

std::vector<double> sortedLabels(const MergeTree& t) {
  std::vector<double> out;
  for (const auto& e : t.edges()) out.push_back(e.label);
  std::ranges::sort(out);
  return out;
}

std::size_t leafCount(const MergeTree& t) {
  std::size_t n = 0;
  for (NodeId v : t.nodes()) n += v != t.root() && t.isLeaf(v);
  return n;
}

std::size_t strictMinima(const ScalarGrid& g, Connectivity conn) {
  std::size_t n = 0;
  for (std::size_t v = 0; v < g.size(); ++v) {
    bool low = true;
    for (auto w : gridNeighbors(g, v, conn)) low = low && g.values[v] < g.values[w];
    n += low;
  }
  return n;
}

ScalarGrid randomGrid(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(r * c);
  for (auto& x : v) x = u(rng);
  return ScalarGrid::make(r, c, std::move(v));
}

}  // namespace

TEST_CASE("grid construction checks its input") {
  CHECK_THROWS_AS(ScalarGrid::make(0, 2, {}), GridError);
  CHECK_THROWS_AS(ScalarGrid::make(2, 2, {1, 2, 3}), GridError);
  CHECK_THROWS_AS(ScalarGrid::make(1, 2, {1, std::nan("")}), GridError);
}

TEST_CASE("neighbors") {
  auto g = ScalarGrid::make(3, 3, std::vector<double>(9, 0.0));
  CHECK(gridNeighbors(g, 4, Connectivity::Four) == std::vector<std::size_t>{1, 3, 5, 7});
  CHECK(gridNeighbors(g, 0, Connectivity::Eight) == std::vector<std::size_t>{1, 3, 4});
  CHECK(gridNeighbors(g, 4, Connectivity::Eight).size() == 8);
}

TEST_CASE("join tree of a two-minimum line") {
  auto t = computeJoinTree(line({0, 2, 1, 3}));
  CHECK(validate(t).empty());
  CHECK(t.root() == 3);
  CHECK(t.label(0) == 2.0);
  CHECK(t.label(2) == 1.0);
  CHECK(t.label(1) == 1.0);
}

TEST_CASE("split tree mirrors the join tree of the negated field") {
  auto s = computeSplitTree(line({3, 1, 2, 0}));
  CHECK(sortedLabels(s) == std::vector<double>{1, 1, 2});
  CHECK(canonicalForm(s) == canonicalForm(computeJoinTree(line({0, 2, 1, 3}))));
}

TEST_CASE("monotone field has a single edge") {
  auto t = computeJoinTree(line({0, 1, 2, 3}));
  CHECK(t.edgeCount() == 1);
  CHECK(t.label(0) == 3.0);
}

TEST_CASE("constant field gives the empty tree with a warning") {
  std::vector<std::string> w;
  auto t = computeJoinTree(ScalarGrid::make(2, 2, {1, 1, 1, 1}), Connectivity::Four, &w);
  CHECK(t.isEmpty());
  CHECK(w.size() == 1);
}

TEST_CASE("saddle at the global maximum keeps the oldest branch") {
  std::vector<std::string> w;
  auto t = computeJoinTree(line({0, 2, 1}), Connectivity::Four, &w);
  CHECK(validate(t).empty());
  CHECK(w.size() == 1);
  CHECK(t.edgeCount() == 1);
  CHECK(t.label(0) == 2.0);
}

TEST_CASE("simplification") {
  auto t = computeJoinTree(line({0, 2, 1, 3}));
  auto s = simplify(t, 1.5);
  CHECK(s.edgeCount() == 1);
  CHECK(s.label(0) == 3.0);
  CHECK(canonicalForm(simplify(t, 0.5)) == canonicalForm(t));
  CHECK(simplify(t, 100).edgeCount() == 1);
  auto g = ScalarGrid::make(1, 2, {0, 4});
  CHECK(SimplificationThreshold{0.25, true}.resolve(g) == 1.0);
  CHECK(SimplificationThreshold{0.25, false}.resolve(g) == 0.25);
}

TEST_CASE("property: join trees of random fields") {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 40; ++i) {
    auto g = randomGrid(rng, 2 + rng() % 8, 2 + rng() % 8);
    for (auto conn : {Connectivity::Four, Connectivity::Eight}) {
      std::vector<std::string> w;
      auto t = computeJoinTree(g, conn, &w);
      CHECK(validate(t).empty());
      if (w.empty()) CHECK(leafCount(t) == strictMinima(g, conn));

      auto shifted = g;
      for (auto& x : shifted.values) x += 0.5;
      auto moved = computeJoinTree(shifted, conn);
      CHECK(moved.edgeCount() == t.edgeCount());
      CHECK(distance(moved, t) <= 1e-9);

      double lo = 0.02 + 0.1 * (rng() % 3);
      auto s = simplify(t, lo);
      CHECK(validate(s).empty());
      CHECK(canonicalForm(simplify(s, lo)) == canonicalForm(s));
      CHECK(simplify(t, lo + 0.1).edgeCount() <= s.edgeCount());
      CHECK(totalPersistence(s) <= totalPersistence(t) + 1e-12);
    }
  }
}
