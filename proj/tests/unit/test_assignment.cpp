#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "mtdist/assignment.hpp"

using namespace mtdist;

namespace {

// Minimum over all partial injections of rows into columns.
double bruteForce(const CostMatrix& c, const std::vector<double>& del, const std::vector<double>& ins,
                  std::size_t minMatches) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> match(c.rows, -1);
  std::vector<bool> usedCol(c.cols, false);
  auto rec = [&](auto&& self, std::size_t i, std::size_t matched, double acc) -> void {
    if (i == c.rows) {
      if (matched < minMatches) return;
      double total = acc;
      for (std::size_t j = 0; j < c.cols; ++j) {
        if (!usedCol[j]) total += ins[j];
      }
      best = std::min(best, total);
      return;
    }
    self(self, i + 1, matched, acc + del[i]);
    for (std::size_t j = 0; j < c.cols; ++j) {
      if (usedCol[j]) continue;
      usedCol[j] = true;
      self(self, i + 1, matched + 1, acc + c.at(i, j));
      usedCol[j] = false;
    }
  };
  rec(rec, 0, 0, 0.0);
  return best;
}

CostMatrix transposed(const CostMatrix& c) {
  CostMatrix t(c.cols, c.rows);
  for (std::size_t i = 0; i < c.rows; ++i) {
    for (std::size_t j = 0; j < c.cols; ++j) t.at(j, i) = c.at(i, j);
  }
  return t;
}

}  // namespace

TEST_CASE("one by one picks the cheaper of matching and delete plus insert") {
  CostMatrix c(1, 1, 4.0);
  std::vector<double> d{1.0}, i{2.0};
  auto a = childAssignment(c, d, i);
  CHECK(a.cost == 3.0);
  CHECK(a.matches.empty());
  auto forced = childAssignment(c, d, i, 1);
  CHECK(forced.cost == 4.0);
  CHECK(forced.matches.size() == 1);
}

TEST_CASE("diagonal and crossed matchings") {
  std::vector<double> d{9, 9}, i{9, 9};
  CostMatrix diag(2, 2);
  diag.values = {0, 9, 9, 0};
  auto a = childAssignment(diag, d, i);
  CHECK(a.cost == 0.0);
  CHECK(a.matches == std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}, {1, 1}});

  CostMatrix cross(2, 2);
  cross.values = {5, 1, 1, 5};
  auto b = childAssignment(cross, d, i);
  CHECK(b.cost == 2.0);
  CHECK(b.matches == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 0}});
}

TEST_CASE("impossible minimum match count gives infinity") {
  CostMatrix c(1, 3, 1.0);
  std::vector<double> d{1}, i{1, 1, 1};
  auto a = childAssignment(c, d, i, 2);
  CHECK(std::isinf(a.cost));
  CHECK(a.matches.empty());
}

TEST_CASE("empty sides") {
  CostMatrix c(0, 2);
  std::vector<double> d, i{1.5, 2.5};
  CHECK(childAssignment(c, d, i).cost == 4.0);
}

TEST_CASE("property: agrees with exhaustive search and is orientation independent") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int k = 0; k < 400; ++k) {
    std::size_t r = rng() % 5, c = rng() % 5;
    CostMatrix m(r, c);
    for (auto& v : m.values) v = u(rng);
    std::vector<double> d(r), i(c);
    for (auto& v : d) v = u(rng);
    for (auto& v : i) v = u(rng);
    std::size_t minMatches = rng() % 3;
    auto a = childAssignment(m, d, i, minMatches);
    double expected = bruteForce(m, d, i, minMatches);
    if (std::isinf(expected)) {
      CHECK(std::isinf(a.cost));
      continue;
    }
    CHECK(std::abs(a.cost - expected) <= 1e-9);
    CHECK(a.matches.size() >= minMatches);
    auto t = childAssignment(transposed(m), i, d, minMatches);
    CHECK(t.cost == a.cost);
  }
}
