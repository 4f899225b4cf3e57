#include "mtdist/edit.hpp"

#include <cmath>

#include "tree_editor.hpp"

namespace mtdist {

namespace {

std::string edgeName(NodeId c, NodeId p) {
  return "(" + std::to_string(c) + "," + std::to_string(p) + ")";
}

bool positiveFinite(double x) { return std::isfinite(x) && x > 0.0; }

template <class... Fs>
struct Overload : Fs... {
  using Fs::operator()...;
};

MergeTree applyRelabel(const MergeTree& tree, const Relabel& op) {
  if (!tree.hasEdge(op.child, op.parent)) {
    throw TreeError("relabel: edge " + edgeName(op.child, op.parent) + " not in tree");
  }
  if (!positiveFinite(op.label)) throw TreeError("relabel: label must be positive");
  TreeEditor ed(tree);
  ed.setLabel(op.child, op.label);
  return ed.release();
}

MergeTree applyContract(const MergeTree& tree, const Contract& op) {
  if (!tree.hasEdge(op.child, op.parent)) {
    throw TreeError("contract: edge " + edgeName(op.child, op.parent) + " not in tree");
  }
  TreeEditor ed(tree);
  if (tree.isLeaf(op.child)) {
    if (op.parent == tree.root()) {
      // Only edge of a single-edge tree.
      ed.removeLeaf(op.child);
      return ed.release();
    }
    ed.removeLeaf(op.child);
    if (ed.tree().children(op.parent).size() == 1) ed.dissolve(op.parent);
    return ed.release();
  }
  if (op.parent == tree.root()) {
    throw TreeError("contract: inner root edge " + edgeName(op.child, op.parent) +
                    " would give the root several children");
  }
  ed.mergeIntoParent(op.child);
  return ed.release();
}

MergeTree applyUncontract(const MergeTree& tree, const Uncontract& op) {
  if (!tree.contains(op.at)) {
    throw TreeError("uncontract: node " + std::to_string(op.at) + " not in tree");
  }
  if (!positiveFinite(op.leafLabel)) throw TreeError("uncontract: leaf label must be positive");
  TreeEditor ed(tree);
  if (op.split) {
    if (op.at == tree.root()) throw TreeError("uncontract: the root has no edge to split");
    if (!positiveFinite(op.upperLabel) || !positiveFinite(op.lowerLabel)) {
      throw TreeError("uncontract: split pieces must be positive");
    }
    double whole = tree.label(op.at);
    double pieces = op.upperLabel + op.lowerLabel;
    if (std::abs(pieces - whole) > 1e-12 * std::max(whole, pieces)) {
      throw TreeError("uncontract: split pieces do not add up to the edge label");
    }
    NodeId mid = ed.splitEdge(op.at, op.upperLabel, op.lowerLabel);
    ed.addChild(mid, op.leafLabel);
    return ed.release();
  }
  bool emptyRoot = tree.isEmpty() && op.at == tree.root();
  bool innerNode = op.at != tree.root() && tree.children(op.at).size() >= 2;
  if (!emptyRoot && !innerNode) {
    throw TreeError("uncontract: cannot attach a leaf at node " + std::to_string(op.at));
  }
  ed.addChild(op.at, op.leafLabel);
  return ed.release();
}

}  // namespace

Uncontract Uncontract::attach(NodeId at, double leafLabel) {
  return Uncontract{at, false, 0.0, 0.0, leafLabel};
}

Uncontract Uncontract::splitting(NodeId at, double upperLabel, double lowerLabel,
                                 double leafLabel) {
  return Uncontract{at, true, upperLabel, lowerLabel, leafLabel};
}

Uncontract Uncontract::splitByFraction(NodeId at, double edgeLabel, double fraction,
                                       double leafLabel) {
  double upper = edgeLabel * fraction;
  return splitting(at, upper, edgeLabel - upper, leafLabel);
}

EditError::EditError(std::size_t index, const std::string& what)
    : TreeError("op " + std::to_string(index) + ": " + what), index_(index) {}

double opCost(double l1, double l2) { return std::abs(l1 - l2); }

MergeTree applyEdit(const MergeTree& tree, const EditOp& op) {
  return std::visit(Overload{
                        [&](const Relabel& r) { return applyRelabel(tree, r); },
                        [&](const Contract& c) { return applyContract(tree, c); },
                        [&](const Uncontract& u) { return applyUncontract(tree, u); },
                    },
                    op);
}

double editCost(const MergeTree& tree, const EditOp& op) {
  return std::visit(Overload{
                        [&](const Relabel& r) { return opCost(tree.label(r.child), r.label); },
                        [&](const Contract& c) { return opCost(tree.label(c.child), 0.0); },
                        [&](const Uncontract& u) { return opCost(0.0, u.leafLabel); },
                    },
                    op);
}

Replay replaySequence(const MergeTree& tree, const EditSequence& seq) {
  Replay r{tree, 0.0};
  for (std::size_t i = 0; i < seq.size(); ++i) {
    try {
      MergeTree next = applyEdit(r.result, seq[i]);
      r.cost += editCost(r.result, seq[i]);
      r.result = std::move(next);
    } catch (const TreeError& e) {
      throw EditError(i, e.what());
    }
  }
  return r;
}

MergeTree applySequence(const MergeTree& tree, const EditSequence& seq) {
  return replaySequence(tree, seq).result;
}

EditOp inverseOf(const MergeTree& tree, const EditOp& op) {
  return std::visit(
      Overload{
          [&](const Relabel& r) -> EditOp {
            return Relabel{r.child, r.parent, tree.label(r.child)};
          },
          [&](const Contract& c) -> EditOp {
            if (!tree.hasEdge(c.child, c.parent)) throw TreeError("contract edge not in tree");
            if (!tree.isLeaf(c.child)) {
              throw TreeError("only leaf contractions have an inverse");
            }
            double leaf = tree.label(c.child);
            if (c.parent == tree.root()) return Uncontract::attach(c.parent, leaf);
            auto kids = tree.children(c.parent);
            if (kids.size() > 2) return Uncontract::attach(c.parent, leaf);
            NodeId other = kids[0] == c.child ? kids[1] : kids[0];
            return Uncontract::splitting(other, tree.label(c.parent), tree.label(other), leaf);
          },
          [&](const Uncontract& u) -> EditOp {
            NodeId bound = tree.idBound();
            NodeId leaf = u.split ? bound + 1 : bound;
            NodeId parent = u.split ? bound : u.at;
            return Contract{leaf, parent};
          },
      },
      op);
}

bool isOneDegree(const MergeTree& tree, const EditSequence& seq) {
  MergeTree cur = tree;
  for (const auto& op : seq) {
    if (const auto* c = std::get_if<Contract>(&op); c && !cur.isLeaf(c->child)) return false;
    cur = applyEdit(cur, op);
  }
  return true;
}

}  // namespace mtdist
