#include "mtdist/path_mapping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace mtdist {

namespace {

std::string describe(const MonotonePath& p) {
  std::string s;
  for (std::size_t i = 0; i < p.vertices.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p.vertices[i]);
  }
  return s;
}

std::size_t sharedVertices(const MonotonePath& a, const MonotonePath& b) {
  std::size_t n = 0;
  for (NodeId v : a.vertices) {
    if (std::ranges::find(b.vertices, v) != b.vertices.end()) ++n;
  }
  return n;
}

void requireValid(const MergeTree& t1, const MergeTree& t2, const PathMapping& m) {
  auto issues = validateMapping(t1, t2, m);
  if (!issues.empty()) throw MappingError("invalid path mapping: " + issues.front());
}

// Pair indices grouped by the start vertices of their two paths.
std::map<std::pair<NodeId, NodeId>, std::vector<std::size_t>> continuations(const PathMapping& m) {
  std::map<std::pair<NodeId, NodeId>, std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < m.pairs.size(); ++i) {
    out[{m.pairs[i].first.start(), m.pairs[i].second.start()}].push_back(i);
  }
  return out;
}

struct LeafReach {
  NodeId leaf;
  double depth;  // label sum from the start node down to the leaf
};

std::vector<LeafReach> leavesBelow(const MergeTree& t, NodeId from) {
  std::vector<LeafReach> out;
  std::vector<std::pair<NodeId, double>> stack{{from, 0.0}};
  while (!stack.empty()) {
    auto [v, d] = stack.back();
    stack.pop_back();
    auto kids = t.children(v);
    if (kids.empty()) {
      out.push_back({v, d});
      continue;
    }
    for (NodeId c : kids) stack.emplace_back(c, d + t.label(c));
  }
  std::ranges::sort(out, {}, &LeafReach::leaf);
  return out;
}

void appendPath(MonotonePath& base, const MonotonePath& tail) {
  base.vertices.insert(base.vertices.end(), tail.vertices.begin() + 1, tail.vertices.end());
}

void extendDeadEnds(const MergeTree& t1, const MergeTree& t2, PathMapping& m) {
  auto cont = continuations(m);
  for (auto& pair : m.pairs) {
    NodeId e1 = pair.first.end();
    NodeId e2 = pair.second.end();
    if (cont.contains({e1, e2})) continue;
    if (t1.isLeaf(e1) && t2.isLeaf(e2)) continue;

    double l1 = pathLabel(t1, pair.first);
    double l2 = pathLabel(t2, pair.second);
    double below1 = subtreePersistence(t1, e1);
    double below2 = subtreePersistence(t2, e2);
    auto leaves1 = leavesBelow(t1, e1);
    auto leaves2 = leavesBelow(t2, e2);

    double best = std::numeric_limits<double>::infinity();
    LeafReach pick1{}, pick2{};
    for (const auto& a : leaves1) {
      for (const auto& b : leaves2) {
        double c = opCost(l1 + a.depth, l2 + b.depth) + (below1 - a.depth) + (below2 - b.depth);
        if (c < best) {
          best = c;
          pick1 = a;
          pick2 = b;
        }
      }
    }
    if (pick1.leaf != e1) appendPath(pair.first, pathBetween(t1, e1, pick1.leaf));
    if (pick2.leaf != e2) appendPath(pair.second, pathBetween(t2, e2, pick2.leaf));
  }
}

bool mergeOneChain(PathMapping& m) {
  auto cont = continuations(m);
  for (std::size_t i = 0; i < m.pairs.size(); ++i) {
    auto it = cont.find({m.pairs[i].first.end(), m.pairs[i].second.end()});
    if (it == cont.end() || it->second.size() != 1) continue;
    std::size_t j = it->second.front();
    appendPath(m.pairs[i].first, m.pairs[j].first);
    appendPath(m.pairs[i].second, m.pairs[j].second);
    m.pairs.erase(m.pairs.begin() + static_cast<std::ptrdiff_t>(j));
    return true;
  }
  return false;
}

}  // namespace

std::vector<std::string> validateMapping(const MergeTree& t1, const MergeTree& t2,
                                         const PathMapping& m) {
  std::vector<std::string> issues;
  bool pathsOk = true;
  for (std::size_t i = 0; i < m.pairs.size(); ++i) {
    const auto& [p, q] = m.pairs[i];
    if (!isPathInTree(t1, p)) {
      issues.push_back("pair " + std::to_string(i) + ": " + describe(p) +
                       " is not a path of the first tree");
      pathsOk = false;
    }
    if (!isPathInTree(t2, q)) {
      issues.push_back("pair " + std::to_string(i) + ": " + describe(q) +
                       " is not a path of the second tree");
      pathsOk = false;
    }
  }
  if (!pathsOk) return issues;

  for (std::size_t i = 0; i < m.pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < m.pairs.size(); ++j) {
      const auto& a = m.pairs[i];
      const auto& b = m.pairs[j];
      bool sameFirst = a.first == b.first;
      bool sameSecond = a.second == b.second;
      if (sameFirst != sameSecond) {
        issues.push_back("one-to-one: pairs " + std::to_string(i) + " and " + std::to_string(j) +
                         " share a path on one side only");
      }
      if (sharedVertices(a.first, b.first) > 1 || sharedVertices(a.second, b.second) > 1) {
        issues.push_back("overlap: pairs " + std::to_string(i) + " and " + std::to_string(j) +
                         " overlap in more than one vertex");
      }
    }
  }

  for (std::size_t i = 0; i < m.pairs.size(); ++i) {
    const auto& [p, q] = m.pairs[i];
    if (p.start() == t1.root() && q.start() == t2.root()) continue;
    bool continued = std::ranges::any_of(m.pairs, [&](const PathPair& prev) {
      return prev.first.end() == p.start() && prev.second.end() == q.start();
    });
    if (!continued) {
      issues.push_back("continuation: pair " + std::to_string(i) + " (" + describe(p) + " / " +
                       describe(q) + ") neither starts at the roots nor continues a pair");
    }
  }
  return issues;
}

std::vector<Edge> unmappedEdges(const MergeTree& tree, const PathMapping& m, bool firstSide) {
  std::set<NodeId> covered;
  for (const auto& pair : m.pairs) {
    const auto& path = firstSide ? pair.first : pair.second;
    covered.insert(path.vertices.begin() + 1, path.vertices.end());
  }
  std::vector<Edge> out;
  for (const auto& e : tree.edges()) {
    if (!covered.contains(e.child)) out.push_back(e);
  }
  return out;
}

double mappingCost(const MergeTree& t1, const MergeTree& t2, const PathMapping& m) {
  requireValid(t1, t2, m);
  double cost = 0.0;
  for (const auto& [p, q] : m.pairs) cost += opCost(pathLabel(t1, p), pathLabel(t2, q));
  for (const auto& e : unmappedEdges(t1, m, true)) cost += opCost(e.label, 0.0);
  for (const auto& e : unmappedEdges(t2, m, false)) cost += opCost(0.0, e.label);
  return cost;
}

bool hasBranchingProperty(const MergeTree& t1, const MergeTree& t2, const PathMapping& m) {
  auto cont = continuations(m);
  for (const auto& [p, q] : m.pairs) {
    auto it = cont.find({p.end(), q.end()});
    std::size_t n = it == cont.end() ? 0 : it->second.size();
    if (n == 0 && !(t1.isLeaf(p.end()) && t2.isLeaf(q.end()))) return false;
    if (n == 1) return false;
  }
  return true;
}

PathMapping normalizeMapping(const MergeTree& t1, const MergeTree& t2, const PathMapping& mapping) {
  requireValid(t1, t2, mapping);
  PathMapping m = mapping;
  extendDeadEnds(t1, t2, m);
  while (mergeOneChain(m)) {
  }
  return m;
}

// ---------------------------------------------------------------------------

namespace {

// Rebuilds the unmapped parts of the target tree on the working tree.
class InsertionBuilder {
 public:
  InsertionBuilder(const MergeTree& target, MergeTree& work, EditSequence& seq,
                   std::vector<NodeId>& toTarget)
      : target_(target), work_(work), seq_(seq), toTarget_(toTarget) {}

  struct Anchor {
    NodeId at = kNoNode;
    bool split = false;
    double upper = 0.0;
    double lower = 0.0;
  };

  // Inserts target subtree hanging from edge (c, parent(c)) at `anchor`.
  // Returns the working node standing for parent(c).
  NodeId branch(const Anchor& anchor, NodeId c) {
    std::vector<NodeId> chain{c};
    while (!target_.isLeaf(chain.back())) chain.push_back(smallestChild(chain.back()));
    std::vector<double> rest(chain.size() + 1, 0.0);
    for (std::size_t i = chain.size(); i-- > 0;) rest[i] = rest[i + 1] + target_.label(chain[i]);

    NodeId bound = work_.idBound();
    Uncontract op = anchor.split ? Uncontract::splitting(anchor.at, anchor.upper, anchor.lower, rest[0])
                                 : Uncontract::attach(anchor.at, rest[0]);
    emit(op);
    NodeId top = anchor.split ? bound : anchor.at;
    NodeId leaf = anchor.split ? bound + 1 : bound;
    record(top, target_.parent(c));
    record(leaf, chain.back());

    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      NodeId x = chain[i];
      sideBranches(leaf, x, chain[i + 1], target_.label(x) / rest[i]);
    }
    return top;
  }

  // Splits working edge (below, parent(below)) where target node `x` sits and
  // hangs every child of `x` other than `onPath` off the new saddle.
  void sideBranches(NodeId below, NodeId x, NodeId onPath, double fraction) {
    std::vector<NodeId> others;
    for (NodeId k : target_.children(x)) {
      if (k != onPath) others.push_back(k);
    }
    std::ranges::sort(others);
    double whole = work_.label(below);
    double upper = whole * fraction;
    NodeId saddle = branch(Anchor{below, true, upper, whole - upper}, others.front());
    for (std::size_t k = 1; k < others.size(); ++k) branch(Anchor{saddle}, others[k]);
  }

 private:
  NodeId smallestChild(NodeId v) const { return std::ranges::min(target_.children(v)); }

  void emit(const EditOp& op) {
    work_ = applyEdit(work_, op);
    seq_.push_back(op);
  }

  void record(NodeId workNode, NodeId targetNode) {
    if (toTarget_.size() <= workNode) toTarget_.resize(workNode + 1, kNoNode);
    toTarget_[workNode] = targetNode;
  }

  const MergeTree& target_;
  MergeTree& work_;
  EditSequence& seq_;
  std::vector<NodeId>& toTarget_;
};

}  // namespace

EditSequence mappingToEditSequence(const MergeTree& t1, const MergeTree& t2,
                                   const PathMapping& mapping) {
  PathMapping m = normalizeMapping(t1, t2, mapping);

  std::vector<char> mapped1(t1.idBound(), 0);
  std::vector<char> mapped2(t2.idBound(), 0);
  for (const auto& [p, q] : m.pairs) {
    for (std::size_t i = 1; i < p.vertices.size(); ++i) mapped1[p.vertices[i]] = 1;
    for (std::size_t i = 1; i < q.vertices.size(); ++i) mapped2[q.vertices[i]] = 1;
  }

  EditSequence seq;
  MergeTree work = t1;

  // Deletions. Contracting a leaf can dissolve its parent; the surviving child
  // keeps its id and the merged edge keeps that child's mapped status.
  for (;;) {
    NodeId pick = kNoNode;
    for (NodeId v : work.nodes()) {
      if (v != work.root() && work.isLeaf(v) && !mapped1[v]) {
        pick = v;
        break;
      }
    }
    if (pick == kNoNode) break;
    Contract op{pick, work.parent(pick)};
    work = applyEdit(work, op);
    seq.push_back(op);
  }

  std::vector<NodeId> toTarget(work.idBound(), kNoNode);
  toTarget[work.root()] = t2.root();
  for (const auto& [p, q] : m.pairs) toTarget[p.end()] = q.end();

  InsertionBuilder builder(t2, work, seq, toTarget);
  if (m.empty()) {
    if (!t2.isEmpty()) builder.branch({work.root()}, t2.children(t2.root()).front());
  } else {
    for (const auto& [p, q] : m.pairs) {
      // Interior vertices of q, top-down. Each splits the remaining lower
      // piece of the working edge that stands for this pair.
      std::vector<double> rest(q.vertices.size() + 1, 0.0);
      for (std::size_t i = q.vertices.size(); i-- > 1;) {
        rest[i] = rest[i + 1] + t2.label(q.vertices[i]);
      }
      for (std::size_t i = 1; i + 1 < q.vertices.size(); ++i) {
        NodeId x = q.vertices[i];
        builder.sideBranches(p.end(), x, q.vertices[i + 1], t2.label(x) / rest[i]);
      }
      // Unmapped children at the end of q.
      if (!t2.isLeaf(q.end())) {
        std::vector<NodeId> extra;
        for (NodeId k : t2.children(q.end())) {
          if (!mapped2[k]) extra.push_back(k);
        }
        std::ranges::sort(extra);
        for (NodeId k : extra) builder.branch({p.end()}, k);
      }
    }
  }

  for (const auto& e : work.edges()) {
    double want = t2.label(toTarget[e.child]);
    if (e.label != want) {
      Relabel op{e.child, e.parent, want};
      work = applyEdit(work, op);
      seq.push_back(op);
    }
  }
  return seq;
}

}  // namespace mtdist
