#include "mtdist/assignment.hpp"

#include <algorithm>
#include <limits>

namespace mtdist {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Square assignment, O(n^3) shortest augmenting paths with potentials.
// Returns rowOf[j] for every column j.
std::vector<std::size_t> hungarian(const CostMatrix& a) {
  const std::size_t n = a.rows;
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      std::size_t i0 = p[j0], j1 = 0;
      double delta = kInf;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = a.at(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<std::size_t> rowOf(n);
  for (std::size_t j = 1; j <= n; ++j) rowOf[j - 1] = p[j] - 1;
  return rowOf;
}

CostMatrix transposed(const CostMatrix& c) {
  CostMatrix t(c.cols, c.rows);
  for (std::size_t i = 0; i < c.rows; ++i) {
    for (std::size_t j = 0; j < c.cols; ++j) t.at(j, i) = c.at(i, j);
  }
  return t;
}

bool lexLess(const CostMatrix& a, std::span<const double> a1, std::span<const double> a2,
             const CostMatrix& b, std::span<const double> b1, std::span<const double> b2) {
  if (a.values != b.values) return std::ranges::lexicographical_compare(a.values, b.values);
  if (!std::ranges::equal(a1, b1)) return std::ranges::lexicographical_compare(a1, b1);
  return std::ranges::lexicographical_compare(a2, b2);
}

Assignment solveOriented(const CostMatrix& cost, std::span<const double> del,
                         std::span<const double> ins, std::size_t minMatches) {
  const std::size_t k1 = cost.rows, k2 = cost.cols;
  const std::size_t n = k1 + k2 - minMatches;
  Assignment out;

  std::vector<std::pair<std::size_t, std::size_t>> matches;
  if (n > 0) {
    // Real rows can fall onto k1 - minMatches dummy columns, so at least
    // minMatches of them end up on real columns.
    CostMatrix padded(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i < k1 && j < k2) {
          padded.at(i, j) = cost.at(i, j);
        } else if (i < k1) {
          padded.at(i, j) = del[i];
        } else if (j < k2) {
          padded.at(i, j) = ins[j];
        }
      }
    }
    auto rowOf = hungarian(padded);
    for (std::size_t j = 0; j < k2; ++j) {
      if (rowOf[j] < k1) matches.emplace_back(rowOf[j], j);
    }
  }
  std::ranges::sort(matches);

  std::vector<char> rowUsed(k1, 0), colUsed(k2, 0);
  std::vector<double> terms;
  terms.reserve(k1 + k2);
  for (auto [i, j] : matches) {
    rowUsed[i] = colUsed[j] = 1;
    terms.push_back(cost.at(i, j));
  }
  for (std::size_t i = 0; i < k1; ++i) {
    if (!rowUsed[i]) terms.push_back(del[i]);
  }
  for (std::size_t j = 0; j < k2; ++j) {
    if (!colUsed[j]) terms.push_back(ins[j]);
  }
  std::ranges::sort(terms);
  for (double t : terms) out.cost += t;
  out.matches = std::move(matches);
  return out;
}

}  // namespace

Assignment childAssignment(const CostMatrix& cost, std::span<const double> deleteCosts,
                           std::span<const double> insertCosts, std::size_t minMatches) {
  if (minMatches > std::min(cost.rows, cost.cols)) return Assignment{{}, kInf};

  bool flip = cost.rows > cost.cols;
  CostMatrix t;
  if (cost.rows == cost.cols) {
    t = transposed(cost);
    flip = lexLess(t, insertCosts, deleteCosts, cost, deleteCosts, insertCosts);
  } else if (flip) {
    t = transposed(cost);
  }
  if (!flip) return solveOriented(cost, deleteCosts, insertCosts, minMatches);

  Assignment a = solveOriented(t, insertCosts, deleteCosts, minMatches);
  for (auto& m : a.matches) std::swap(m.first, m.second);
  std::ranges::sort(a.matches);
  return a;
}

}  // namespace mtdist
