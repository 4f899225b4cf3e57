#include "mtdist/scalar_field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tree_editor.hpp"

namespace mtdist {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  std::size_t unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return a;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return a;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

void warn(std::vector<std::string>* sink, std::string msg) {
  if (sink) sink->push_back(std::move(msg));
}

// Lowest vertex of the subtree below `node`, in sweep order.
std::size_t birthOf(const MergeTree& t, const ScalarGrid& g, NodeId node) {
  std::size_t best = node;
  std::vector<NodeId> stack{node};
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    if (t.isLeaf(v)) {
      auto lower = [&](std::size_t a, std::size_t b) {
        return g.values[a] < g.values[b] || (g.values[a] == g.values[b] && a < b);
      };
      if (lower(v, best)) best = v;
    }
    for (NodeId c : t.children(v)) stack.push_back(c);
  }
  return best;
}

// Removes zero-length edges left by ties in the field.
MergeTree dropZeroEdges(MergeTree tree, const ScalarGrid& g, std::vector<std::string>* warnings) {
  TreeEditor ed(std::move(tree));
  for (;;) {
    const MergeTree& t = ed.tree();
    NodeId zero = kNoNode;
    for (NodeId v : t.nodes()) {
      if (v != t.root() && t.label(v) == 0.0) {
        zero = v;
        break;
      }
    }
    if (zero == kNoNode) break;
    NodeId p = t.parent(zero);
    if (t.isLeaf(zero)) {
      ed.removeLeaf(zero);
      if (p != t.root() && ed.tree().children(p).size() == 1) ed.dissolve(p);
    } else if (p != t.root()) {
      ed.mergeIntoParent(zero);
    } else {
      // The global maximum is itself a saddle. Keep the oldest branch, as
      // the elder rule would, and drop the younger ones.
      std::vector<NodeId> kids(t.children(zero).begin(), t.children(zero).end());
      std::ranges::sort(kids, [&](NodeId a, NodeId b) {
        std::size_t ba = birthOf(t, g, a), bb = birthOf(t, g, b);
        return g.values[ba] < g.values[bb] || (g.values[ba] == g.values[bb] && ba < bb);
      });
      warn(warnings, "global maximum is a saddle; dropped " + std::to_string(kids.size() - 1) +
                         " younger branch(es) merging there");
      for (std::size_t i = 1; i < kids.size(); ++i) ed.removeSubtree(kids[i]);
      ed.dissolve(zero);
    }
  }
  return ed.release();
}

}  // namespace

ScalarGrid ScalarGrid::make(std::size_t rows, std::size_t cols, std::vector<double> values) {
  if (rows == 0 || cols == 0) throw GridError("grid dimensions must be positive");
  if (values.size() != rows * cols) {
    throw GridError("grid has " + std::to_string(values.size()) + " values, expected " +
                    std::to_string(rows * cols));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw GridError("non-finite value at index " + std::to_string(i));
  }
  return ScalarGrid{rows, cols, std::move(values)};
}

double SimplificationThreshold::resolve(const ScalarGrid& grid) const {
  if (!relative || grid.values.empty()) return epsilon;
  auto [lo, hi] = std::ranges::minmax_element(grid.values);
  return epsilon * (*hi - *lo);
}

ScalarGrid negated(const ScalarGrid& grid) {
  ScalarGrid out = grid;
  for (double& v : out.values) v = -v;
  return out;
}

std::vector<std::size_t> gridNeighbors(const ScalarGrid& grid, std::size_t v, Connectivity conn) {
  std::vector<std::size_t> out;
  auto r = static_cast<long>(v / grid.cols), c = static_cast<long>(v % grid.cols);
  auto rows = static_cast<long>(grid.rows), cols = static_cast<long>(grid.cols);
  for (long dr = -1; dr <= 1; ++dr) {
    for (long dc = -1; dc <= 1; ++dc) {
      if (dr == 0 && dc == 0) continue;
      if (conn == Connectivity::Four && dr != 0 && dc != 0) continue;
      long rr = r + dr, cc = c + dc;
      if (rr < 0 || cc < 0 || rr >= rows || cc >= cols) continue;
      out.push_back(static_cast<std::size_t>(rr * cols + cc));
    }
  }
  return out;
}

MergeTree computeJoinTree(const ScalarGrid& grid, Connectivity conn,
                          std::vector<std::string>* warnings) {
  if (grid.values.empty()) throw GridError("empty grid");
  const std::size_t n = grid.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::ranges::sort(order, [&](std::size_t a, std::size_t b) {
    return grid.values[a] < grid.values[b] || (grid.values[a] == grid.values[b] && a < b);
  });

  DisjointSets sets(n);
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> rep(n, 0);  // critical node heading each component
  std::vector<Edge> edges;
  for (std::size_t v : order) {
    std::vector<std::size_t> comps;
    for (std::size_t w : gridNeighbors(grid, v, conn)) {
      if (!seen[w]) continue;
      std::size_t root = sets.find(w);
      if (std::ranges::find(comps, root) == comps.end()) comps.push_back(root);
    }
    seen[v] = 1;
    if (comps.empty()) {
      rep[v] = v;
      continue;
    }
    std::size_t head = comps.size() == 1 ? rep[comps.front()] : v;
    if (comps.size() > 1) {
      for (std::size_t c : comps) {
        edges.push_back({static_cast<NodeId>(rep[c]), static_cast<NodeId>(v),
                         grid.values[v] - grid.values[rep[c]]});
      }
    }
    std::size_t merged = v;
    for (std::size_t c : comps) merged = sets.unite(merged, c);
    rep[merged] = head;
  }

  std::size_t top = order.back();
  std::size_t last = rep[sets.find(top)];
  NodeId root = static_cast<NodeId>(last == top ? n : top);
  double rootLabel = last == top ? 0.0 : grid.values[top] - grid.values[last];
  edges.push_back({static_cast<NodeId>(last), root, rootLabel});

  MergeTree tree = dropZeroEdges(MergeTree::fromEdges(edges), grid, warnings);
  if (tree.isEmpty()) {
    warn(warnings, "field has no feature of positive persistence; returning the empty tree");
  }
  return tree;
}

MergeTree computeSplitTree(const ScalarGrid& grid, Connectivity conn,
                           std::vector<std::string>* warnings) {
  return computeJoinTree(negated(grid), conn, warnings);
}

MergeTree simplify(const MergeTree& tree, double epsilon) {
  TreeEditor ed(tree);
  for (;;) {
    const MergeTree& t = ed.tree();
    if (t.edgeCount() <= 1) break;
    NodeId pick = kNoNode;
    for (NodeId v : t.nodes()) {
      if (v == t.root() || !t.isLeaf(v)) continue;
      if (pick == kNoNode || t.label(v) < t.label(pick)) pick = v;
    }
    if (!(t.label(pick) < epsilon)) break;
    NodeId p = t.parent(pick);
    ed.removeLeaf(pick);
    if (ed.tree().children(p).size() == 1) ed.dissolve(p);
  }
  return ed.release();
}

}  // namespace mtdist
