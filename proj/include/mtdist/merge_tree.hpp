#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mtdist {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

class TreeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Edge (child, parent) with its persistence label.
struct Edge {
  NodeId child = kNoNode;
  NodeId parent = kNoNode;
  double label = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Rooted, unordered tree with positive edge labels.
///
/// Node ids are nonnegative integers private to one tree. They stay stable
/// across edits: removed nodes leave a dead slot and inserted nodes take ids
/// past `idBound()`. The empty tree is a lone root without edges.
///
/// Construction only enforces the graph structure (single root, no cycles,
/// one parent per node). Degree and label rules are reported by `validate`,
/// so malformed trees can be built and inspected.
class MergeTree {
 public:
  /// Empty tree rooted at node 0.
  MergeTree();

  static MergeTree empty(NodeId root = 0);
  /// Builds a tree from (child, parent, label) triples. Zero edges give the
  /// empty tree rooted at 0. Throws TreeError on duplicate children,
  /// multiple roots or cycles.
  static MergeTree fromEdges(std::span<const Edge> edges);

  bool isEmpty() const noexcept { return edgeCount_ == 0; }
  NodeId root() const noexcept { return root_; }
  std::size_t nodeCount() const noexcept { return edgeCount_ + 1; }
  std::size_t edgeCount() const noexcept { return edgeCount_; }
  /// One past the largest id slot in use.
  NodeId idBound() const noexcept { return static_cast<NodeId>(parent_.size()); }

  bool contains(NodeId node) const noexcept;
  bool hasEdge(NodeId child, NodeId parent) const noexcept;
  /// kNoNode for the root.
  NodeId parent(NodeId node) const;
  /// Children in storage order; the order carries no meaning.
  std::span<const NodeId> children(NodeId node) const;
  /// Label of the edge from `child` to its parent.
  double label(NodeId child) const;
  bool isLeaf(NodeId node) const { return children(node).empty(); }

  /// Live node ids in ascending order.
  std::vector<NodeId> nodes() const;
  /// Edges ordered by child id.
  std::vector<Edge> edges() const;
  /// Nodes with every child listed before its parent.
  std::vector<NodeId> postOrder() const;

  /// Same tree with the children of `node` stored in the given order, which
  /// must be a permutation of the current one.
  MergeTree withChildOrder(NodeId node, std::span<const NodeId> order) const;

 private:
  friend class TreeEditor;

  void requireNode(NodeId node) const;

  std::vector<NodeId> parent_;
  std::vector<std::vector<NodeId>> children_;
  std::vector<double> label_;
  std::vector<char> alive_;
  NodeId root_ = 0;
  std::size_t edgeCount_ = 0;
};

/// Root-to-leaf directed vertex sequence; vertices.front() is the start.
struct MonotonePath {
  std::vector<NodeId> vertices;

  NodeId start() const { return vertices.front(); }
  NodeId end() const { return vertices.back(); }
  std::size_t edgeCount() const { return vertices.size() - 1; }

  friend bool operator==(const MonotonePath&, const MonotonePath&) = default;
  friend auto operator<=>(const MonotonePath&, const MonotonePath&) = default;
};

/// Every violation of the abstract merge tree rules; empty means valid.
std::vector<std::string> validate(const MergeTree& tree);
bool isValid(const MergeTree& tree);

/// The subtree hanging from edge (child, parent), including `parent` as its
/// root.
MergeTree subtree(const MergeTree& tree, NodeId child, NodeId parent);

/// The tree without the subtree of edge (child, parent). A parent left with a
/// single child is dissolved and its two edges merged.
MergeTree subtract(const MergeTree& tree, NodeId child, NodeId parent);

double pathLabel(const MergeTree& tree, const MonotonePath& path);
/// Path from `ancestor` down to `node`. Throws if `ancestor` is not above it.
MonotonePath pathBetween(const MergeTree& tree, NodeId ancestor, NodeId node);
bool isPathInTree(const MergeTree& tree, const MonotonePath& path);

double totalPersistence(const MergeTree& tree);
/// Sum of labels of all edges below `node`.
double subtreePersistence(const MergeTree& tree, NodeId node);

/// Encoding that is equal for two trees iff they are isomorphic as unordered
/// trees with bit-identical labels.
std::string canonicalForm(const MergeTree& tree);

/// Shortest decimal that parses back to the same double.
std::string formatReal(double value);

}  // namespace mtdist
