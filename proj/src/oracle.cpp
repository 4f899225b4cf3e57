#include "mtdist/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "tree_editor.hpp"

namespace mtdist {

namespace {

void requireSmall(const MergeTree& t1, const MergeTree& t2) {
  if (t1.edgeCount() > kOracleMaxEdges || t2.edgeCount() > kOracleMaxEdges) {
    throw OracleLimitError("exhaustive mapping search is limited to " +
                           std::to_string(kOracleMaxEdges) + " edges per tree");
  }
}

// All downward paths that start at `from` and leave it through `child`.
std::vector<MonotonePath> pathsThrough(const MergeTree& t, NodeId from, NodeId child) {
  std::vector<MonotonePath> out;
  std::vector<MonotonePath> stack{MonotonePath{{from, child}}};
  while (!stack.empty()) {
    MonotonePath p = std::move(stack.back());
    stack.pop_back();
    for (NodeId c : t.children(p.end())) {
      MonotonePath q = p;
      q.vertices.push_back(c);
      stack.push_back(std::move(q));
    }
    out.push_back(std::move(p));
  }
  return out;
}

// Top-down enumeration. Each frontier item is the end pair of a mapped pair
// (or the two roots); its continuations are chosen as a whole, so every
// mapping is produced by exactly one sequence of choices.
class Enumerator {
 public:
  using Visit = std::function<void(const PathMapping&, std::uint64_t, std::uint64_t)>;

  Enumerator(const MergeTree& t1, const MergeTree& t2, Visit visit)
      : t1_(t1), t2_(t2), visit_(std::move(visit)) {}

  void run() {
    frontier_.push_back({t1_.root(), t2_.root()});
    item(0);
  }

 private:
  void item(std::size_t idx) {
    if (idx == frontier_.size()) {
      visit_(current_, used1_, used2_);
      return;
    }
    auto [u, v] = frontier_[idx];
    std::vector<NodeId> kids1(t1_.children(u).begin(), t1_.children(u).end());
    std::vector<NodeId> kids2(t2_.children(v).begin(), t2_.children(v).end());
    std::vector<char> taken(kids2.size(), 0);
    choose(idx, u, v, kids1, kids2, taken, 0);
  }

  void choose(std::size_t idx, NodeId u, NodeId v, const std::vector<NodeId>& kids1,
              const std::vector<NodeId>& kids2, std::vector<char>& taken, std::size_t i) {
    if (i == kids1.size()) {
      item(idx + 1);
      return;
    }
    choose(idx, u, v, kids1, kids2, taken, i + 1);
    for (std::size_t j = 0; j < kids2.size(); ++j) {
      if (taken[j]) continue;
      taken[j] = 1;
      for (const auto& p : pathsThrough(t1_, u, kids1[i])) {
        std::uint64_t m1 = edgeMask(p);
        if (m1 & used1_) continue;
        for (const auto& q : pathsThrough(t2_, v, kids2[j])) {
          std::uint64_t m2 = edgeMask(q);
          if (m2 & used2_) continue;
          used1_ |= m1;
          used2_ |= m2;
          current_.pairs.push_back({p, q});
          frontier_.push_back({p.end(), q.end()});
          choose(idx, u, v, kids1, kids2, taken, i + 1);
          frontier_.pop_back();
          current_.pairs.pop_back();
          used1_ &= ~m1;
          used2_ &= ~m2;
        }
      }
      taken[j] = 0;
    }
  }

  // Edges are identified by child id; ids of small trees fit in 64 bits.
  static std::uint64_t edgeMask(const MonotonePath& p) {
    std::uint64_t m = 0;
    for (std::size_t k = 1; k < p.vertices.size(); ++k) m |= std::uint64_t{1} << p.vertices[k];
    return m;
  }

  const MergeTree& t1_;
  const MergeTree& t2_;
  Visit visit_;
  std::vector<std::pair<NodeId, NodeId>> frontier_;
  PathMapping current_;
  std::uint64_t used1_ = 0;
  std::uint64_t used2_ = 0;
};

void requireSmallIds(const MergeTree& t) {
  if (t.idBound() > 64) throw OracleLimitError("node ids must stay below 64");
}

std::vector<NodeId> descendantsFrom(const MergeTree& t, NodeId c) {
  std::vector<NodeId> out;
  std::vector<NodeId> stack{c};
  while (!stack.empty()) {
    NodeId x = stack.back();
    stack.pop_back();
    out.push_back(x);
    for (NodeId k : t.children(x)) stack.push_back(k);
  }
  return out;
}

class Counter {
 public:
  Counter(const MergeTree& t1, const MergeTree& t2) : t1_(t1), t2_(t2) {}

  // Ways to continue the mapping below the end pair (u, v).
  std::uint64_t count(NodeId u, NodeId v) {
    auto it = memo_.find({u, v});
    if (it != memo_.end()) return it->second;
    auto kids1 = t1_.children(u);
    auto kids2 = t2_.children(v);
    // ways[i][j]: ways to map the edge (kids1[i], u) to (kids2[j], v) with
    // everything below.
    std::vector<std::vector<std::uint64_t>> ways(kids1.size(),
                                                 std::vector<std::uint64_t>(kids2.size(), 0));
    for (std::size_t i = 0; i < kids1.size(); ++i) {
      for (std::size_t j = 0; j < kids2.size(); ++j) {
        for (NodeId x : descendantsFrom(t1_, kids1[i])) {
          for (NodeId y : descendantsFrom(t2_, kids2[j])) ways[i][j] += count(x, y);
        }
      }
    }
    // Partial injections from kids1 into kids2, over subsets of used columns.
    std::vector<std::uint64_t> dp(std::size_t{1} << kids2.size(), 0);
    dp[0] = 1;
    for (std::size_t i = 0; i < kids1.size(); ++i) {
      std::vector<std::uint64_t> next = dp;
      for (std::size_t mask = 0; mask < dp.size(); ++mask) {
        if (!dp[mask]) continue;
        for (std::size_t j = 0; j < kids2.size(); ++j) {
          if (mask & (std::size_t{1} << j)) continue;
          next[mask | (std::size_t{1} << j)] += dp[mask] * ways[i][j];
        }
      }
      dp = std::move(next);
    }
    std::uint64_t total = 0;
    for (auto w : dp) total += w;
    memo_[{u, v}] = total;
    return total;
  }

 private:
  const MergeTree& t1_;
  const MergeTree& t2_;
  std::map<std::pair<NodeId, NodeId>, std::uint64_t> memo_;
};

}  // namespace

void enumerateMappings(const MergeTree& t1, const MergeTree& t2,
                       const std::function<void(const PathMapping&)>& visit) {
  requireSmall(t1, t2);
  requireSmallIds(t1);
  requireSmallIds(t2);
  Enumerator(t1, t2, [&](const PathMapping& m, std::uint64_t, std::uint64_t) { visit(m); }).run();
}

std::uint64_t countMappings(const MergeTree& t1, const MergeTree& t2) {
  requireSmall(t1, t2);
  return Counter(t1, t2).count(t1.root(), t2.root());
}

double bruteForceDistance(const MergeTree& t1, const MergeTree& t2) {
  requireSmall(t1, t2);
  requireSmallIds(t1);
  requireSmallIds(t2);
  auto e1 = t1.edges();
  auto e2 = t2.edges();
  double best = std::numeric_limits<double>::infinity();
  Enumerator(t1, t2, [&](const PathMapping& m, std::uint64_t used1, std::uint64_t used2) {
    double cost = 0.0;
    for (const auto& [p, q] : m.pairs) cost += opCost(pathLabel(t1, p), pathLabel(t2, q));
    for (const auto& e : e1) {
      if (!(used1 >> e.child & 1)) cost += e.label;
    }
    for (const auto& e : e2) {
      if (!(used2 >> e.child & 1)) cost += e.label;
    }
    best = std::min(best, cost);
  }).run();
  return best;
}

MergeTree randomTree(const TreeGenConfig& config) {
  if (!(config.labelLow > 0.0) || !(config.labelHigh >= config.labelLow) ||
      !std::isfinite(config.labelHigh)) {
    throw TreeError("random tree: label range must satisfy 0 < low <= high");
  }
  if (config.maxDegree < 2) throw TreeError("random tree: maxDegree must be at least 2");
  if (config.edgeCount == 0) return MergeTree::empty();

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> labelDist(config.labelLow, config.labelHigh);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto pick = [&](std::size_t n) {
    return static_cast<std::size_t>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
  };

  Edge first{1, 0, labelDist(rng)};
  TreeEditor ed(MergeTree::fromEdges(std::span<const Edge>(&first, 1)));
  std::size_t edges = 1;
  while (edges < config.edgeCount) {
    const MergeTree& t = ed.tree();
    std::vector<NodeId> open;
    if (config.maxDegree > 2) {
      for (NodeId v : t.nodes()) {
        auto n = t.children(v).size();
        if (v != t.root() && n >= 2 && n < config.maxDegree) open.push_back(v);
      }
    }
    bool roomForSplit = edges + 2 <= config.edgeCount;
    bool attach = !open.empty() && (!roomForSplit || unit(rng) < 1.0 / 3.0);
    if (attach) {
      ed.addChild(open[pick(open.size())], labelDist(rng));
      edges += 1;
      continue;
    }
    if (!roomForSplit) break;
    auto all = t.nodes();
    std::vector<NodeId> below;
    for (NodeId v : all) {
      if (v != t.root()) below.push_back(v);
    }
    NodeId c = below[pick(below.size())];
    double whole = t.label(c);
    double upper = 0.0;
    do {
      upper = whole * unit(rng);
    } while (!(upper > 0.0 && whole - upper > 0.0));
    NodeId mid = ed.splitEdge(c, upper, whole - upper);
    ed.addChild(mid, labelDist(rng));
    edges += 2;
  }
  return ed.release();
}

}  // namespace mtdist
