#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include "mtdist/merge_tree.hpp"
#include "mtdist/path_mapping.hpp"

namespace mtdist {

/// Largest edge count per tree accepted by the exhaustive routines.
inline constexpr std::size_t kOracleMaxEdges = 8;

class OracleLimitError : public TreeError {
 public:
  using TreeError::TreeError;
};

/// Calls `visit` once for every path mapping between the two trees, the empty
/// mapping included. Throws OracleLimitError above kOracleMaxEdges.
void enumerateMappings(const MergeTree& t1, const MergeTree& t2,
                       const std::function<void(const PathMapping&)>& visit);

/// Number of path mappings, by a memoized recursion that does not enumerate.
std::uint64_t countMappings(const MergeTree& t1, const MergeTree& t2);

/// Minimum mapping cost over all path mappings.
double bruteForceDistance(const MergeTree& t1, const MergeTree& t2);

struct TreeGenConfig {
  std::uint64_t seed = 0;
  std::size_t edgeCount = 0;
  double labelLow = 1.0;
  double labelHigh = 10.0;
  /// Above 2, new leaves may also hang off existing saddles with fewer than
  /// this many children.
  std::size_t maxDegree = 2;
};

/// Seeded random tree grown from a single edge by splitting edges and hanging
/// new leaves. Binary trees always have an odd number of edges, so an even
/// `edgeCount` yields one edge fewer when no saddle can take an extra leaf.
/// Throws TreeError for an invalid config.
MergeTree randomTree(const TreeGenConfig& config);

}  // namespace mtdist
