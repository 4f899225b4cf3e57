#pragma once

#include <string>
#include <vector>

#include "mtdist/edit.hpp"
#include "mtdist/merge_tree.hpp"

namespace mtdist {

struct PathPair {
  MonotonePath first;   // path in the first tree
  MonotonePath second;  // path in the second tree

  friend bool operator==(const PathPair&, const PathPair&) = default;
};

/// One-to-one pairing of monotone paths between two trees. The trees are not
/// referenced; every operation takes them explicitly.
struct PathMapping {
  std::vector<PathPair> pairs;

  bool empty() const { return pairs.empty(); }
  friend bool operator==(const PathMapping&, const PathMapping&) = default;
};

class MappingError : public TreeError {
 public:
  using TreeError::TreeError;
};

/// Violations of the pairing rules (one-to-one, at most one shared vertex,
/// every pair either starts at both roots or continues another pair).
std::vector<std::string> validateMapping(const MergeTree& t1, const MergeTree& t2,
                                         const PathMapping& mapping);

/// Relabel cost of all pairs plus the labels of every edge on no mapped path.
/// Throws MappingError for an invalid mapping.
double mappingCost(const MergeTree& t1, const MergeTree& t2, const PathMapping& mapping);

/// Edges of `tree` that lie on no mapped path of the given side, by child id.
std::vector<Edge> unmappedEdges(const MergeTree& tree, const PathMapping& mapping, bool firstSide);

/// True iff every pair ends in two leaves or is continued by at least two
/// pairs.
bool hasBranchingProperty(const MergeTree& t1, const MergeTree& t2, const PathMapping& mapping);

/// Extends pairs that stop above unmapped subtrees down to leaves and merges
/// chains of pairs that continue through a single pair. Never raises the
/// cost; the result has the branching property.
PathMapping normalizeMapping(const MergeTree& t1, const MergeTree& t2, const PathMapping& mapping);

/// Deletions of the unmapped parts of `t1`, then insertions of the unmapped
/// parts of `t2`, then relabels to the exact labels of `t2`. Replaying the
/// result on `t1` gives a tree with the canonical form of `t2`. The sequence
/// is built from the normalized mapping, so its cost equals mappingCost for
/// mappings that already have the branching property and is never larger.
EditSequence mappingToEditSequence(const MergeTree& t1, const MergeTree& t2,
                                   const PathMapping& mapping);

}  // namespace mtdist
