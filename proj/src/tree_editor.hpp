#pragma once

#include "mtdist/merge_tree.hpp"

namespace mtdist {

// Mutating access to MergeTree internals for the edit routines. Trees are
// copied before any of these run, so public values stay immutable.
class TreeEditor {
 public:
  explicit TreeEditor(MergeTree tree) : tree_(std::move(tree)) {}

  MergeTree& tree() { return tree_; }
  MergeTree release() { return std::move(tree_); }

  void setLabel(NodeId child, double label) { tree_.label_[child] = label; }

  // Drops a childless node and its edge.
  void removeLeaf(NodeId leaf);

  // Replaces a non-root node that has exactly one child by a single edge from
  // that child to the node's parent, labels summed.
  void dissolve(NodeId node);

  // Moves the children of `child` to its parent and drops `child`.
  void mergeIntoParent(NodeId child);

  // New node under `parent`, appended after its existing children.
  NodeId addChild(NodeId parent, double label);

  // New node on edge (child, parent(child)); returns its id.
  NodeId splitEdge(NodeId child, double upperLabel, double lowerLabel);

  // Drops the node and everything below it.
  void removeSubtree(NodeId node);

 private:
  void replaceChild(NodeId parent, NodeId oldChild, NodeId newChild);
  void eraseChild(NodeId parent, NodeId child);
  NodeId allocate();

  MergeTree tree_;
};

}  // namespace mtdist
