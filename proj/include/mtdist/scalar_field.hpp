#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mtdist/merge_tree.hpp"

namespace mtdist {

class GridError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Regular 1D or 2D scalar field, row-major. A 1D field has one row.
struct ScalarGrid {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  /// Throws GridError on empty dims, size mismatch or non-finite values.
  static ScalarGrid make(std::size_t rows, std::size_t cols, std::vector<double> values);

  double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
  std::size_t size() const { return values.size(); }
};

/// Four: edge neighbors (two in 1D). Eight: edge and corner neighbors.
enum class Connectivity { Four, Eight };

ScalarGrid negated(const ScalarGrid& grid);

/// Ids of the neighbors of vertex `v` in ascending order.
std::vector<std::size_t> gridNeighbors(const ScalarGrid& grid, std::size_t v, Connectivity conn);

/// Merge tree of the sublevel sets. Vertices are swept by (value, index);
/// node ids are linear grid indices, plus rows * cols for a root that is not
/// a grid vertex. Ties can produce zero-length edges, which are contracted.
/// A constant field gives the empty tree. Degenerate cases are reported
/// through `warnings` when it is not null.
MergeTree computeJoinTree(const ScalarGrid& grid, Connectivity conn = Connectivity::Four,
                          std::vector<std::string>* warnings = nullptr);

/// Merge tree of the superlevel sets: the join tree of the negated field.
MergeTree computeSplitTree(const ScalarGrid& grid, Connectivity conn = Connectivity::Four,
                           std::vector<std::string>* warnings = nullptr);

struct SimplificationThreshold {
  double epsilon = 0.0;
  /// Interpret `epsilon` as a fraction of the field's value range.
  bool relative = false;

  /// Threshold in scalar units for the given field.
  double resolve(const ScalarGrid& grid) const;
};

/// Repeatedly contracts the leaf edge with the smallest label (smaller child
/// id on ties) while that label is below `epsilon` and more than one edge
/// remains.
MergeTree simplify(const MergeTree& tree, double epsilon);

}  // namespace mtdist
