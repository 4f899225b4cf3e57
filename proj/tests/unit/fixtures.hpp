#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "mtdist/merge_tree.hpp"
#include "mtdist/oracle.hpp"

namespace fixtures {

using mtdist::Edge;
using mtdist::MergeTree;
using mtdist::NodeId;

// Node names used by the worked examples: A = 0, B = 1, and so on.
enum : NodeId { A, B, C, D, E, F, G, H };

inline MergeTree build(std::vector<Edge> edges) { return MergeTree::fromEdges(edges); }

// A root; B under A; C and F under B; D and E under C.
inline MergeTree worked() {
  return build({{B, A, 3}, {C, B, 3}, {D, C, 4}, {E, C, 1.5}, {F, B, 5}});
}

inline MergeTree singleEdge(double label) { return build({{1, 0, label}}); }

inline MergeTree randomTree(std::uint64_t seed, std::size_t edges, std::size_t maxDegree = 2) {
  return mtdist::randomTree({seed, edges, 1.0, 10.0, maxDegree});
}

// Mixed binary and degree-3 trees with 1..maxEdges edges.
inline MergeTree mixedTree(std::mt19937_64& rng, std::size_t maxEdges) {
  std::size_t edges = std::uniform_int_distribution<std::size_t>(1, maxEdges)(rng);
  std::size_t degree = rng() % 2 ? 3 : 2;
  return randomTree(rng(), edges, degree);
}

// Same tree with every child list stored in a random order.
inline MergeTree shuffled(const MergeTree& t, std::mt19937_64& rng) {
  MergeTree out = t;
  for (NodeId v : t.nodes()) {
    std::vector<NodeId> kids(t.children(v).begin(), t.children(v).end());
    if (kids.size() < 2) continue;
    std::shuffle(kids.begin(), kids.end(), rng);
    out = out.withChildOrder(v, kids);
  }
  return out;
}

}  // namespace fixtures
