#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace mtdist {

/// Row-major k1 x k2 matrix of matching costs.
struct CostMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  CostMatrix() = default;
  CostMatrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), values(r * c, fill) {}

  double& at(std::size_t i, std::size_t j) { return values[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
};

struct Assignment {
  /// Matched (row, column) pairs, sorted by row.
  std::vector<std::pair<std::size_t, std::size_t>> matches;
  double cost = 0.0;
};

/// Minimum-cost partial assignment between rows and columns. A matched pair
/// (i, j) costs cost(i, j), an unmatched row i costs deleteCosts[i] and an
/// unmatched column j costs insertCosts[j]. At least `minMatches` pairs are
/// matched; if that is impossible the cost is +infinity and no pairs are
/// returned.
///
/// The result does not depend on whether the problem is posed as (C, d, i) or
/// as (C^T, i, d), and the total is summed in ascending term order, so both
/// orientations return bit-identical costs.
Assignment childAssignment(const CostMatrix& cost, std::span<const double> deleteCosts,
                           std::span<const double> insertCosts, std::size_t minMatches = 0);

}  // namespace mtdist
