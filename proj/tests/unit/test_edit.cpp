#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "mtdist/edit.hpp"

using namespace mtdist;
using namespace fixtures;

TEST_CASE("contracting a leaf under a binary saddle merges two edges") {
  auto t = applyEdit(worked(), Contract{F, B});
  CHECK(t.hasEdge(C, A));
  CHECK(t.label(C) == 6.0);
  CHECK(!t.contains(B));
  CHECK(validate(t).empty());
  CHECK(editCost(worked(), Contract{F, B}) == 5.0);
}

TEST_CASE("two deletions leave a single path") {
  EditSequence seq{Contract{F, B}, Contract{E, C}};
  auto t = applySequence(worked(), seq);
  CHECK(t.edgeCount() == 1);
  CHECK(t.label(D) == 10.0);
  CHECK(replaySequence(worked(), seq).cost == 6.5);
}

TEST_CASE("relabel") {
  auto t = applyEdit(singleEdge(3), Relabel{1, 0, 5});
  CHECK(t.label(1) == 5.0);
  CHECK(editCost(singleEdge(3), Relabel{1, 0, 5}) == 2.0);
  CHECK_THROWS_AS(applyEdit(singleEdge(3), Relabel{1, 0, 0}), TreeError);
  CHECK_THROWS_AS(applyEdit(singleEdge(3), Relabel{2, 0, 1}), TreeError);
}

TEST_CASE("uncontract undoes a contraction") {
  auto t = worked();
  EditOp del = Contract{F, B};
  EditOp ins = inverseOf(t, del);
  auto back = applyEdit(applyEdit(t, del), ins);
  CHECK(canonicalForm(back) == canonicalForm(t));
  CHECK(std::get<Uncontract>(ins).split);
  CHECK(std::get<Uncontract>(ins).fraction() == doctest::Approx(0.5));
}

TEST_CASE("contracting the only edge gives the empty tree and back") {
  auto t = singleEdge(4);
  auto e = applyEdit(t, Contract{1, 0});
  CHECK(e.isEmpty());
  CHECK(validate(e).empty());
  auto back = applyEdit(e, Uncontract::attach(e.root(), 4));
  CHECK(canonicalForm(back) == canonicalForm(t));
}

TEST_CASE("uncontract rejects invalid placements") {
  auto t = worked();
  CHECK_THROWS_AS(applyEdit(t, Uncontract::attach(D, 1)), TreeError);
  CHECK_THROWS_AS(applyEdit(t, Uncontract::attach(A, 1)), TreeError);
  CHECK_THROWS_AS(applyEdit(t, Uncontract::splitting(A, 1, 1, 1)), TreeError);
  CHECK_THROWS_AS(applyEdit(t, Uncontract::splitting(D, 1, 1, 1)), TreeError);
  CHECK_THROWS_AS(applyEdit(t, Uncontract::splitting(D, 4, 0, 1)), TreeError);
  CHECK_NOTHROW(applyEdit(t, Uncontract::splitting(D, 1, 3, 1)));
  CHECK_NOTHROW(applyEdit(t, Uncontract::attach(C, 1)));
  CHECK_THROWS_AS(applyEdit(t, Contract{B, A}), TreeError);
}

TEST_CASE("sequence errors carry the failing index") {
  EditSequence seq{Contract{F, B}, Contract{F, B}};
  try {
    applySequence(worked(), seq);
    FAIL("expected an error");
  } catch (const EditError& e) {
    CHECK(e.index() == 1);
  }
}

TEST_CASE("opCost is the distance on the real line") {
  CHECK(opCost(3, 5) == 2.0);
  CHECK(opCost(4, 0) == 4.0);
  CHECK(opCost(7, 7) == 0.0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  for (int i = 0; i < 1000; ++i) {
    double a = u(rng), b = u(rng), c = u(rng);
    CHECK(opCost(a, b) == opCost(b, a));
    CHECK(opCost(a, c) <= opCost(a, b) + opCost(b, c) + 1e-12);
  }
}

namespace {

// Every op that applies to `t`: relabels, contractions of all non-root
// edges and leaf edges, and leaf insertions at every position.
std::vector<EditOp> applicableOps(const MergeTree& t, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.5, 5.0);
  std::vector<EditOp> ops;
  for (const auto& e : t.edges()) {
    ops.push_back(Relabel{e.child, e.parent, u(rng)});
    if (t.isLeaf(e.child) || e.parent != t.root()) ops.push_back(Contract{e.child, e.parent});
    ops.push_back(Uncontract::splitByFraction(e.child, e.label, 0.5, u(rng)));
    if (!t.isLeaf(e.child)) ops.push_back(Uncontract::attach(e.child, u(rng)));
  }
  if (t.isEmpty()) ops.push_back(Uncontract::attach(t.root(), u(rng)));
  return ops;
}

}  // namespace

TEST_CASE("property: every applicable op keeps the tree valid") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 60; ++i) {
    auto t = mixedTree(rng, 12);
    for (const auto& op : applicableOps(t, rng)) {
      auto r = applyEdit(t, op);
      CHECK(validate(r).empty());
    }
  }
}

TEST_CASE("property: leaf contraction followed by its inverse restores the tree") {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 60; ++i) {
    auto t = mixedTree(rng, 12);
    for (const auto& e : t.edges()) {
      if (!t.isLeaf(e.child)) continue;
      EditOp del = Contract{e.child, e.parent};
      auto back = applyEdit(applyEdit(t, del), inverseOf(t, del));
      CHECK(canonicalForm(back) == canonicalForm(t));
    }
  }
}

TEST_CASE("property: relabels and insertions undone in reverse restore the tree") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 40; ++i) {
    auto t = mixedTree(rng, 10);
    MergeTree cur = t;
    std::vector<std::pair<MergeTree, EditOp>> done;
    for (int k = 0; k < 6; ++k) {
      std::vector<EditOp> ops;
      for (const auto& op : applicableOps(cur, rng)) {
        // Inverses of contractions re-insert nodes under fresh ids, which
        // earlier inverses in the chain would not know about.
        if (std::holds_alternative<Contract>(op)) continue;
        ops.push_back(op);
      }
      const auto& op = ops[rng() % ops.size()];
      done.emplace_back(cur, op);
      cur = applyEdit(cur, op);
    }
    for (auto it = done.rbegin(); it != done.rend(); ++it) {
      cur = applyEdit(cur, inverseOf(it->first, it->second));
      CHECK(canonicalForm(cur) == canonicalForm(it->first));
    }
    CHECK(canonicalForm(cur) == canonicalForm(t));
  }
}
