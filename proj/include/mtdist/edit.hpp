#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "mtdist/merge_tree.hpp"

namespace mtdist {

/// Sets the label of edge (child, parent).
struct Relabel {
  NodeId child = kNoNode;
  NodeId parent = kNoNode;
  double label = 0.0;
};

/// Removes edge (child, parent) and merges its endpoints. A parent left with
/// one child is dissolved and its two edges are joined with summed labels.
/// Contracting the only edge of a tree yields the empty tree.
struct Contract {
  NodeId child = kNoNode;
  NodeId parent = kNoNode;
};

/// Inserts a new leaf edge. Without a split the leaf hangs directly off `at`,
/// which must be an inner node or the root of the empty tree. With a split,
/// edge (at, parent(at)) is cut by a new saddle into an upper and a lower
/// piece and the leaf hangs off that saddle. New nodes take ids from
/// `idBound()` upward, saddle first.
struct Uncontract {
  NodeId at = kNoNode;
  bool split = false;
  double upperLabel = 0.0;
  double lowerLabel = 0.0;
  double leafLabel = 0.0;

  static Uncontract attach(NodeId at, double leafLabel);
  static Uncontract splitting(NodeId at, double upperLabel, double lowerLabel, double leafLabel);
  /// Cuts an edge of label `edgeLabel` so the upper piece holds `fraction` of it.
  static Uncontract splitByFraction(NodeId at, double edgeLabel, double fraction, double leafLabel);

  double fraction() const { return upperLabel / (upperLabel + lowerLabel); }
};

using EditOp = std::variant<Relabel, Contract, Uncontract>;
using EditSequence = std::vector<EditOp>;

class EditError : public TreeError {
 public:
  EditError(std::size_t index, const std::string& what);
  /// Position of the failing op within its sequence.
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// |l1 - l2|; insertions and deletions pair a label with 0.
double opCost(double l1, double l2);

MergeTree applyEdit(const MergeTree& tree, const EditOp& op);
/// Cost of `op` when applied to `tree`.
double editCost(const MergeTree& tree, const EditOp& op);

MergeTree applySequence(const MergeTree& tree, const EditSequence& seq);

struct Replay {
  MergeTree result;
  double cost = 0.0;
};
Replay replaySequence(const MergeTree& tree, const EditSequence& seq);

/// Op that undoes `op` on `tree`, up to the ids of re-inserted nodes.
EditOp inverseOf(const MergeTree& tree, const EditOp& op);

/// True iff every contraction in `seq` removes a leaf edge when replayed.
bool isOneDegree(const MergeTree& tree, const EditSequence& seq);

}  // namespace mtdist
