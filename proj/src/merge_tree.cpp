#include "mtdist/merge_tree.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <unordered_map>

#include "tree_editor.hpp"

namespace mtdist {

MergeTree::MergeTree() : parent_(1, kNoNode), children_(1), label_(1, 0.0), alive_(1, 1) {}

MergeTree MergeTree::empty(NodeId root) {
  MergeTree t;
  t.parent_.assign(root + 1, kNoNode);
  t.children_.assign(root + 1, {});
  t.label_.assign(root + 1, 0.0);
  t.alive_.assign(root + 1, 0);
  t.alive_[root] = 1;
  t.root_ = root;
  return t;
}

MergeTree MergeTree::fromEdges(std::span<const Edge> edges) {
  if (edges.empty()) return MergeTree::empty(0);

  NodeId bound = 0;
  for (const auto& e : edges) {
    if (e.child == kNoNode || e.parent == kNoNode) throw TreeError("reserved node id");
    if (e.child == e.parent) throw TreeError("self loop at node " + std::to_string(e.child));
    bound = std::max({bound, e.child + 1, e.parent + 1});
  }

  MergeTree t;
  t.parent_.assign(bound, kNoNode);
  t.children_.assign(bound, {});
  t.label_.assign(bound, 0.0);
  t.alive_.assign(bound, 0);

  for (const auto& e : edges) {
    if (t.parent_[e.child] != kNoNode) {
      throw TreeError("node " + std::to_string(e.child) + " has more than one parent");
    }
    t.parent_[e.child] = e.parent;
    t.label_[e.child] = e.label;
    t.children_[e.parent].push_back(e.child);
    t.alive_[e.child] = 1;
    t.alive_[e.parent] = 1;
  }

  std::vector<NodeId> roots;
  for (NodeId v = 0; v < bound; ++v) {
    if (t.alive_[v] && t.parent_[v] == kNoNode) roots.push_back(v);
  }
  if (roots.empty()) throw TreeError("no root: edges form a cycle");
  if (roots.size() > 1) {
    throw TreeError("multiple roots: " + std::to_string(roots[0]) + " and " +
                    std::to_string(roots[1]));
  }
  t.root_ = roots.front();
  t.edgeCount_ = edges.size();

  // Every node must be reachable from the root, otherwise a cycle hides
  // a second component.
  std::size_t reached = 0;
  std::vector<NodeId> stack{t.root_};
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    ++reached;
    for (NodeId c : t.children_[v]) stack.push_back(c);
  }
  if (reached != t.edgeCount_ + 1) throw TreeError("edges contain a cycle");
  return t;
}

bool MergeTree::contains(NodeId node) const noexcept {
  return node < alive_.size() && alive_[node];
}

bool MergeTree::hasEdge(NodeId child, NodeId parent) const noexcept {
  return contains(child) && parent != kNoNode && parent_[child] == parent;
}

void MergeTree::requireNode(NodeId node) const {
  if (!contains(node)) throw TreeError("node " + std::to_string(node) + " not in tree");
}

NodeId MergeTree::parent(NodeId node) const {
  requireNode(node);
  return parent_[node];
}

std::span<const NodeId> MergeTree::children(NodeId node) const {
  requireNode(node);
  return children_[node];
}

double MergeTree::label(NodeId child) const {
  requireNode(child);
  if (child == root_) throw TreeError("the root has no parent edge");
  return label_[child];
}

std::vector<NodeId> MergeTree::nodes() const {
  std::vector<NodeId> out;
  out.reserve(nodeCount());
  for (NodeId v = 0; v < alive_.size(); ++v) {
    if (alive_[v]) out.push_back(v);
  }
  return out;
}

std::vector<Edge> MergeTree::edges() const {
  std::vector<Edge> out;
  out.reserve(edgeCount_);
  for (NodeId v = 0; v < alive_.size(); ++v) {
    if (alive_[v] && v != root_) out.push_back({v, parent_[v], label_[v]});
  }
  return out;
}

std::vector<NodeId> MergeTree::postOrder() const {
  std::vector<NodeId> order;
  order.reserve(nodeCount());
  std::vector<std::pair<NodeId, std::size_t>> stack{{root_, 0}};
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    if (next < children_[v].size()) {
      NodeId c = children_[v][next++];
      stack.emplace_back(c, 0);
    } else {
      order.push_back(v);
      stack.pop_back();
    }
  }
  return order;
}

MergeTree MergeTree::withChildOrder(NodeId node, std::span<const NodeId> order) const {
  requireNode(node);
  std::vector<NodeId> sortedOld(children_[node].begin(), children_[node].end());
  std::vector<NodeId> sortedNew(order.begin(), order.end());
  std::ranges::sort(sortedOld);
  std::ranges::sort(sortedNew);
  if (sortedOld != sortedNew) throw TreeError("child order is not a permutation");
  MergeTree copy = *this;
  copy.children_[node].assign(order.begin(), order.end());
  return copy;
}

// ---------------------------------------------------------------------------

void TreeEditor::eraseChild(NodeId parent, NodeId child) {
  auto& kids = tree_.children_[parent];
  kids.erase(std::ranges::find(kids, child));
}

void TreeEditor::replaceChild(NodeId parent, NodeId oldChild, NodeId newChild) {
  auto& kids = tree_.children_[parent];
  *std::ranges::find(kids, oldChild) = newChild;
}

void TreeEditor::removeLeaf(NodeId leaf) {
  NodeId p = tree_.parent_[leaf];
  eraseChild(p, leaf);
  tree_.alive_[leaf] = 0;
  tree_.parent_[leaf] = kNoNode;
  tree_.label_[leaf] = 0.0;
  --tree_.edgeCount_;
}

void TreeEditor::dissolve(NodeId node) {
  NodeId up = tree_.parent_[node];
  NodeId only = tree_.children_[node].front();
  tree_.label_[only] = tree_.label_[node] + tree_.label_[only];
  tree_.parent_[only] = up;
  replaceChild(up, node, only);
  tree_.children_[node].clear();
  tree_.alive_[node] = 0;
  tree_.parent_[node] = kNoNode;
  tree_.label_[node] = 0.0;
  --tree_.edgeCount_;
}

void TreeEditor::mergeIntoParent(NodeId child) {
  NodeId p = tree_.parent_[child];
  auto& kids = tree_.children_[p];
  auto pos = std::ranges::find(kids, child);
  std::vector<NodeId> moved = std::move(tree_.children_[child]);
  tree_.children_[child].clear();
  pos = kids.erase(pos);
  kids.insert(pos, moved.begin(), moved.end());
  for (NodeId g : moved) tree_.parent_[g] = p;
  tree_.alive_[child] = 0;
  tree_.parent_[child] = kNoNode;
  tree_.label_[child] = 0.0;
  --tree_.edgeCount_;
}

NodeId TreeEditor::allocate() {
  auto id = static_cast<NodeId>(tree_.parent_.size());
  tree_.parent_.push_back(kNoNode);
  tree_.children_.emplace_back();
  tree_.label_.push_back(0.0);
  tree_.alive_.push_back(1);
  return id;
}

NodeId TreeEditor::addChild(NodeId parent, double label) {
  NodeId id = allocate();
  tree_.parent_[id] = parent;
  tree_.label_[id] = label;
  tree_.children_[parent].push_back(id);
  ++tree_.edgeCount_;
  return id;
}

NodeId TreeEditor::splitEdge(NodeId child, double upperLabel, double lowerLabel) {
  NodeId up = tree_.parent_[child];
  NodeId mid = allocate();
  tree_.parent_[mid] = up;
  tree_.label_[mid] = upperLabel;
  replaceChild(up, child, mid);
  tree_.children_[mid].push_back(child);
  tree_.parent_[child] = mid;
  tree_.label_[child] = lowerLabel;
  ++tree_.edgeCount_;
  return mid;
}

void TreeEditor::removeSubtree(NodeId node) {
  std::vector<NodeId> stack{node};
  std::vector<NodeId> doomed;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    doomed.push_back(v);
    for (NodeId c : tree_.children_[v]) stack.push_back(c);
  }
  eraseChild(tree_.parent_[node], node);
  for (NodeId v : doomed) {
    tree_.children_[v].clear();
    tree_.alive_[v] = 0;
    tree_.parent_[v] = kNoNode;
    tree_.label_[v] = 0.0;
  }
  tree_.edgeCount_ -= doomed.size();
}

// ---------------------------------------------------------------------------

std::vector<std::string> validate(const MergeTree& tree) {
  std::vector<std::string> issues;
  if (tree.isEmpty()) return issues;

  auto rootKids = tree.children(tree.root());
  if (rootKids.size() != 1) {
    issues.push_back("root " + std::to_string(tree.root()) + " has degree " +
                     std::to_string(rootKids.size()) + ", expected one");
  }
  for (NodeId v : tree.nodes()) {
    if (v == tree.root()) continue;
    if (tree.children(v).size() == 1) {
      issues.push_back("inner node " + std::to_string(v) + " has degree one");
    }
    double l = tree.label(v);
    if (!std::isfinite(l) || !(l > 0.0)) {
      issues.push_back("edge (" + std::to_string(v) + "," + std::to_string(tree.parent(v)) +
                       ") has nonpositive label " + formatReal(l));
    }
  }
  return issues;
}

bool isValid(const MergeTree& tree) { return validate(tree).empty(); }

MergeTree subtree(const MergeTree& tree, NodeId child, NodeId parent) {
  if (!tree.hasEdge(child, parent)) {
    throw TreeError("edge (" + std::to_string(child) + "," + std::to_string(parent) +
                    ") not in tree");
  }
  std::vector<Edge> kept{{child, parent, tree.label(child)}};
  std::vector<NodeId> stack{child};
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (NodeId c : tree.children(v)) {
      kept.push_back({c, v, tree.label(c)});
      stack.push_back(c);
    }
  }
  std::ranges::sort(kept, {}, &Edge::child);
  return MergeTree::fromEdges(kept);
}

MergeTree subtract(const MergeTree& tree, NodeId child, NodeId parent) {
  if (!tree.hasEdge(child, parent)) {
    throw TreeError("edge (" + std::to_string(child) + "," + std::to_string(parent) +
                    ") not in tree");
  }
  if (parent == tree.root()) throw TreeError("cannot subtract the root edge");
  TreeEditor ed(tree);
  ed.removeSubtree(child);
  if (ed.tree().children(parent).size() == 1) ed.dissolve(parent);
  return ed.release();
}

bool isPathInTree(const MergeTree& tree, const MonotonePath& path) {
  if (path.vertices.size() < 2) return false;
  for (std::size_t i = 1; i < path.vertices.size(); ++i) {
    if (!tree.hasEdge(path.vertices[i], path.vertices[i - 1])) return false;
  }
  return true;
}

double pathLabel(const MergeTree& tree, const MonotonePath& path) {
  if (!isPathInTree(tree, path)) throw TreeError("path not in tree");
  double sum = 0.0;
  for (std::size_t i = 1; i < path.vertices.size(); ++i) sum += tree.label(path.vertices[i]);
  return sum;
}

MonotonePath pathBetween(const MergeTree& tree, NodeId ancestor, NodeId node) {
  MonotonePath p;
  NodeId v = node;
  p.vertices.push_back(v);
  while (v != ancestor) {
    v = tree.parent(v);
    if (v == kNoNode) {
      throw TreeError("node " + std::to_string(ancestor) + " is not above " +
                      std::to_string(node));
    }
    p.vertices.push_back(v);
  }
  if (p.vertices.size() < 2) throw TreeError("a path needs at least one edge");
  std::ranges::reverse(p.vertices);
  return p;
}

double totalPersistence(const MergeTree& tree) {
  double sum = 0.0;
  for (const auto& e : tree.edges()) sum += e.label;
  return sum;
}

double subtreePersistence(const MergeTree& tree, NodeId node) {
  double sum = 0.0;
  std::vector<NodeId> stack{node};
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (NodeId c : tree.children(v)) {
      sum += tree.label(c);
      stack.push_back(c);
    }
  }
  return sum;
}

std::string formatReal(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string canonicalForm(const MergeTree& tree) {
  if (tree.isEmpty()) return "()";
  std::unordered_map<NodeId, std::string> code;
  for (NodeId v : tree.postOrder()) {
    if (v == tree.root()) break;
    std::vector<std::string> parts;
    for (NodeId c : tree.children(v)) parts.push_back(std::move(code[c]));
    std::ranges::sort(parts);
    std::string s = "(" + formatReal(tree.label(v)) + ":";
    for (auto& p : parts) s += p;
    s += ")";
    code[v] = std::move(s);
  }
  return code[tree.children(tree.root()).front()];
}

}  // namespace mtdist
