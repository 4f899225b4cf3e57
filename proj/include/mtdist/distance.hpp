#pragma once

#include <cstddef>

#include "mtdist/merge_tree.hpp"
#include "mtdist/path_mapping.hpp"

namespace mtdist {

struct DistanceOptions {
  /// Largest memo table, in entries, kept as flat arrays. Bigger problems use
  /// a hash table holding only the visited states.
  std::size_t denseMemoLimit = std::size_t{1} << 23;
};

/// Path mapping distance, which equals the one-degree edit distance. Both
/// trees must be valid; throws TreeError otherwise.
double distance(const MergeTree& t1, const MergeTree& t2, const DistanceOptions& options = {});

struct DistanceResult {
  double distance = 0.0;
  /// An optimal mapping. It has the branching property and its cost equals
  /// `distance` up to rounding.
  PathMapping mapping;
};

DistanceResult distanceWithMapping(const MergeTree& t1, const MergeTree& t2,
                                   const DistanceOptions& options = {});

}  // namespace mtdist
