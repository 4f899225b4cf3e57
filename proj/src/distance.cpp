#include "mtdist/distance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>

#include "mtdist/assignment.hpp"

namespace mtdist {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum Choice : std::int32_t { kLeafLeaf = 0, kExtendFirst = 1, kExtendSecond = 2, kSplit = 3 };

std::int32_t encode(Choice kind, std::size_t child) {
  return static_cast<std::int32_t>(kind) | static_cast<std::int32_t>(child << 2);
}

// Per-tree tables. Nodes are renumbered densely in ascending id order, and
// children are kept sorted, so nothing depends on child storage order.
struct Side {
  explicit Side(const MergeTree& t) : tree(t) {
    ids = t.nodes();
    index.assign(t.idBound(), 0);
    for (std::size_t i = 0; i < ids.size(); ++i) index[ids[i]] = static_cast<std::uint32_t>(i);
    const std::size_t n = ids.size();
    kids.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (NodeId c : t.children(ids[i])) kids[i].push_back(index[c]);
      std::ranges::sort(kids[i]);
    }

    depth.assign(n, 0);
    height.assign(n, 0.0);
    std::vector<std::uint32_t> stack{index[t.root()]};
    while (!stack.empty()) {
      std::uint32_t v = stack.back();
      stack.pop_back();
      for (std::uint32_t c : kids[v]) {
        depth[c] = depth[v] + 1;
        height[c] = height[v] + t.label(ids[c]);
        stack.push_back(c);
      }
    }

    mass.assign(n, 0.0);
    branch.assign(n, 0.0);
    for (NodeId id : t.postOrder()) {
      std::uint32_t v = index[id];
      double m = 0.0;
      for (std::uint32_t c : kids[v]) m += branch[c];
      mass[v] = m;
      if (id != t.root()) branch[v] = t.label(id) + m;
    }

    others.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t j = 0; j < kids[v].size(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < kids[v].size(); ++i) {
          if (i != j) s += branch[kids[v][i]];
        }
        others[v].push_back(s);
      }
    }

    pairBase.assign(n, 0);
    std::size_t total = 0;
    for (std::size_t v = 0; v < n; ++v) {
      pairBase[v] = total;
      total += depth[v];
    }
    pairCount = total;
  }

  std::size_t pairIndex(std::uint32_t node, std::uint32_t ancestor) const {
    return pairBase[node] + (depth[node] - depth[ancestor] - 1);
  }

  const MergeTree& tree;
  std::vector<NodeId> ids;
  std::vector<std::uint32_t> index;
  std::vector<std::vector<std::uint32_t>> kids;
  std::vector<std::uint32_t> depth;
  std::vector<double> height;  // label sum from the root
  std::vector<double> mass;    // label sum below the node
  std::vector<double> branch;  // label of the edge above the node plus mass
  std::vector<std::vector<double>> others;  // mass of all sibling branches but child j
  std::vector<std::size_t> pairBase;
  std::size_t pairCount = 0;
};

struct Entry {
  double value;
  std::int32_t choice;
};

class Solver {
 public:
  Solver(const MergeTree& t1, const MergeTree& t2, const DistanceOptions& options)
      : a_(t1), b_(t2) {
    std::size_t states = a_.pairCount * b_.pairCount;
    dense_ = states <= options.denseMemoLimit;
    if (dense_) {
      values_.assign(states, std::numeric_limits<double>::quiet_NaN());
      choices_.assign(states, 0);
    }
    splitSlot_.assign(a_.ids.size() * b_.ids.size(), -1);
  }

  double top() {
    return solve(rootChild(a_), rootIndex(a_), rootChild(b_), rootIndex(b_));
  }

  PathMapping traceTop() {
    PathMapping m;
    trace(rootChild(a_), rootIndex(a_), rootChild(b_), rootIndex(b_), m);
    return m;
  }

 private:
  static std::uint32_t rootIndex(const Side& s) { return s.index[s.tree.root()]; }
  static std::uint32_t rootChild(const Side& s) { return s.kids[rootIndex(s)].front(); }

  std::size_t key(std::uint32_t n1, std::uint32_t p1, std::uint32_t n2, std::uint32_t p2) const {
    return a_.pairIndex(n1, p1) * b_.pairCount + b_.pairIndex(n2, p2);
  }

  bool lookup(std::size_t k, Entry& e) const {
    if (dense_) {
      if (std::isnan(values_[k])) return false;
      e = {values_[k], choices_[k]};
      return true;
    }
    auto it = sparse_.find(k);
    if (it == sparse_.end()) return false;
    e = it->second;
    return true;
  }

  void store(std::size_t k, Entry e) {
    if (dense_) {
      values_[k] = e.value;
      choices_[k] = e.choice;
    } else {
      sparse_.emplace(k, e);
    }
  }

  const Assignment& split(std::uint32_t n1, std::uint32_t n2) {
    std::size_t slot = static_cast<std::size_t>(n1) * b_.ids.size() + n2;
    if (splitSlot_[slot] >= 0) return splits_[static_cast<std::size_t>(splitSlot_[slot])];
    const auto& k1 = a_.kids[n1];
    const auto& k2 = b_.kids[n2];
    CostMatrix c(k1.size(), k2.size());
    std::vector<double> del(k1.size()), ins(k2.size());
    for (std::size_t i = 0; i < k1.size(); ++i) {
      del[i] = a_.branch[k1[i]];
      for (std::size_t j = 0; j < k2.size(); ++j) c.at(i, j) = solve(k1[i], n1, k2[j], n2);
    }
    for (std::size_t j = 0; j < k2.size(); ++j) ins[j] = b_.branch[k2[j]];
    splits_.push_back(childAssignment(c, del, ins, 2));
    splitSlot_[slot] = static_cast<std::int32_t>(splits_.size() - 1);
    return splits_.back();
  }

  double solve(std::uint32_t n1, std::uint32_t p1, std::uint32_t n2, std::uint32_t p2) {
    std::size_t k = key(n1, p1, n2, p2);
    Entry e{};
    if (lookup(k, e)) return e.value;

    double relabel = std::abs((a_.height[n1] - a_.height[p1]) - (b_.height[n2] - b_.height[p2]));
    const auto& k1 = a_.kids[n1];
    const auto& k2 = b_.kids[n2];
    double best = kInf;
    std::int32_t choice = encode(kLeafLeaf, 0);
    if (k1.empty() && k2.empty()) {
      best = relabel;
    } else {
      if (!k1.empty() && !k2.empty()) {
        best = split(n1, n2).cost + relabel;
        choice = encode(kSplit, 0);
      }
      for (std::size_t j = 0; j < k1.size(); ++j) {
        double v = solve(k1[j], p1, n2, p2) + a_.others[n1][j];
        if (v < best) {
          best = v;
          choice = encode(kExtendFirst, j);
        }
      }
      for (std::size_t j = 0; j < k2.size(); ++j) {
        double v = solve(n1, p1, k2[j], p2) + b_.others[n2][j];
        if (v < best) {
          best = v;
          choice = encode(kExtendSecond, j);
        }
      }
    }
    store(k, {best, choice});
    return best;
  }

  void trace(std::uint32_t n1, std::uint32_t p1, std::uint32_t n2, std::uint32_t p2,
             PathMapping& m) {
    Entry e{};
    if (!lookup(key(n1, p1, n2, p2), e)) {
      solve(n1, p1, n2, p2);
      lookup(key(n1, p1, n2, p2), e);
    }
    auto kind = static_cast<Choice>(e.choice & 3);
    std::size_t j = static_cast<std::size_t>(e.choice >> 2);
    switch (kind) {
      case kExtendFirst:
        trace(a_.kids[n1][j], p1, n2, p2, m);
        return;
      case kExtendSecond:
        trace(n1, p1, b_.kids[n2][j], p2, m);
        return;
      case kLeafLeaf:
      case kSplit:
        m.pairs.push_back({pathBetween(a_.tree, a_.ids[p1], a_.ids[n1]),
                           pathBetween(b_.tree, b_.ids[p2], b_.ids[n2])});
        break;
    }
    if (kind == kSplit) {
      // Copy: tracing may grow the split cache.
      auto matches = split(n1, n2).matches;
      for (auto [i, c] : matches) trace(a_.kids[n1][i], n1, b_.kids[n2][c], n2, m);
    }
  }

  Side a_, b_;
  bool dense_ = false;
  std::vector<double> values_;
  std::vector<std::int32_t> choices_;
  std::unordered_map<std::size_t, Entry> sparse_;
  std::vector<std::int32_t> splitSlot_;
  std::vector<Assignment> splits_;
};

void requireValid(const MergeTree& t, const char* which) {
  auto issues = validate(t);
  if (!issues.empty()) throw TreeError(std::string(which) + " tree is invalid: " + issues.front());
}

}  // namespace

double distance(const MergeTree& t1, const MergeTree& t2, const DistanceOptions& options) {
  requireValid(t1, "first");
  requireValid(t2, "second");
  if (t1.isEmpty() && t2.isEmpty()) return 0.0;
  if (t1.isEmpty()) return totalPersistence(t2);
  if (t2.isEmpty()) return totalPersistence(t1);
  return Solver(t1, t2, options).top();
}

DistanceResult distanceWithMapping(const MergeTree& t1, const MergeTree& t2,
                                   const DistanceOptions& options) {
  requireValid(t1, "first");
  requireValid(t2, "second");
  if (t1.isEmpty() || t2.isEmpty()) return {distance(t1, t2, options), {}};
  Solver s(t1, t2, options);
  DistanceResult r;
  r.distance = s.top();
  r.mapping = s.traceTop();
  return r;
}

}  // namespace mtdist
