#include <gtest/gtest.h>

#include <random>

#include "bubblepack/bubble_graph.hpp"
#include "bubblepack/menger.hpp"
#include "bubblepack/tree_builder.hpp"
#include "bubblepack/verifier.hpp"
#include "mutation.hpp"
#include "naive.hpp"

using namespace bubblepack;

namespace {

std::vector<Permutation> sample_set(std::mt19937_64& rng, int n) {
  std::vector<Permutation> S;
  while (S.size() < 4) {
    const auto p = unrank(rng() % factorial(n), n);
    if (std::find(S.begin(), S.end(), p) == S.end()) S.push_back(p);
  }
  return S;
}

bool has_kind(const VerifyReport& r, ViolationKind k) {
  for (const auto& v : r.violations)
    if (v.kind == k) return true;
  return false;
}

}  // namespace

TEST(VerifyPacking, BuilderOutputIsClean) {
  std::mt19937_64 rng(1);
  const BubbleGraph g(4);
  for (int t = 0; t < 200; ++t) {
    const auto S = sample_set(rng, 4);
    const auto p = build_trees(4, S);
    const auto rep = verify_packing(g, S, p);
    EXPECT_TRUE(rep.ok) << rep.to_text();
    EXPECT_EQ(rep.stats.sizes.size(), 2u);
  }
}

TEST(VerifyPacking, DeletedEdgeIsNotATree) {
  const std::vector<Permutation> S{{1, 2, 3, 4}, {2, 1, 3, 4}, {4, 3, 2, 1}, {3, 1, 4, 2}};
  auto p = build_trees(4, S);
  auto& e = p.trees[0].edges;
  // An interior edge: both endpoints keep another edge.
  std::size_t pick = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    int da = 0;
    int db = 0;
    for (const auto& f : e) {
      da += f.a == e[i].a || f.b == e[i].a;
      db += f.a == e[i].b || f.b == e[i].b;
    }
    if (da > 1 && db > 1) pick = i;
  }
  e.erase(e.begin() + static_cast<long>(pick));
  const auto rep = verify_packing(BubbleGraph(4), S, p);
  EXPECT_FALSE(rep.ok);
  EXPECT_TRUE(has_kind(rep, ViolationKind::not_a_tree)) << rep.to_text();
}

TEST(VerifyPacking, SharedInnerVertexIsWitnessed) {
  const std::vector<Permutation> S{{1, 2, 3}, {2, 1, 3}, {3, 2, 1}, {3, 1, 2}};
  // A duplicated tree shares its inner vertex with the original.
  TreePacking p = build_trees(3, S);
  p.trees.push_back(p.trees[0]);
  p.fallback_used.push_back(false);
  const auto rep = verify_packing(BubbleGraph(3), S, p);
  EXPECT_FALSE(rep.ok);
  bool witnessed = false;
  for (const auto& v : rep.violations)
    if (v.kind == ViolationKind::vertex_overlap_beyond_s)
      for (const auto& w : v.witness) witnessed = witnessed || (w == Permutation{1, 3, 2}) || (w == Permutation{2, 3, 1});
  EXPECT_TRUE(witnessed) << rep.to_text();
  EXPECT_TRUE(has_kind(rep, ViolationKind::edge_overlap));
}

TEST(VerifyPacking, ReportsEveryViolation) {
  const std::vector<Permutation> S{{1, 2, 3, 4}, {2, 1, 3, 4}, {1, 3, 2, 4}, {1, 2, 4, 3}};
  TreePacking p;
  p.n = 4;
  p.terminals = S;
  TreeCertificate a;
  a.edges = {Edge({1, 2, 3, 4}, {4, 3, 2, 1})};  // not an edge, misses terminals
  TreeCertificate b;
  b.edges = {Edge({1, 2, 3, 4}, {2, 1, 3, 4})};
  p.trees = {a, b};
  p.fallback_used = {false, false};
  const auto rep = verify_packing(BubbleGraph(4), S, p);
  EXPECT_TRUE(has_kind(rep, ViolationKind::not_an_edge));
  EXPECT_TRUE(has_kind(rep, ViolationKind::terminal_missing));
  EXPECT_GE(rep.violations.size(), 3u);
}

TEST(VerifyPacking, AcceptsGarbage) {
  TreePacking p;
  p.n = 4;
  TreeCertificate t;
  t.edges = {Edge({1, 2, 3}, {2, 1, 3})};
  p.trees = {t};
  const auto rep = verify_packing(BubbleGraph(4), {{1, 2, 3, 4}}, p);
  EXPECT_FALSE(rep.ok);
}

TEST(VerifyPacking, AgreesWithReferenceCheckerUnderMutation) {
  std::mt19937_64 rng(2024);
  const BubbleGraph g(4);
  int rejected = 0;
  int still_valid = 0;
  while (rejected < 1000) {
    auto S = sample_set(rng, 4);
    const auto p = build_trees(4, S);
    ASSERT_TRUE(naive::packing_ok(S, p));
    const auto m = mutation::mutate(rng, p, S);
    const bool reference = naive::packing_ok(S, m);
    const bool ours = verify_packing(g, S, m).ok;
    ASSERT_EQ(ours, reference);
    if (reference) {
      ++still_valid;
    } else {
      ++rejected;
    }
  }
  EXPECT_EQ(rejected, 1000);
  RecordProperty("edits_still_valid", still_valid);
}

TEST(VerifyPaths, ContractBreachAndZeroLength) {
  const auto r = RegionSpec::whole(4);
  const BubbleGraph g(4);
  const Permutation u = Permutation::identity(4);
  PathSet ps;
  ps.contract = PathContract::pairwise_disjoint;
  ps.paths = {{u, u.swap_adjacent(1)}, {u.swap_adjacent(2), u, u.swap_adjacent(3)}};
  ps.sources = {u, u.swap_adjacent(2)};
  ps.sinks = {u.swap_adjacent(1), u.swap_adjacent(3)};
  const auto bad = verify_paths(g, r, ps);
  EXPECT_FALSE(bad.ok);
  EXPECT_TRUE(has_kind(bad, ViolationKind::contract_breach));

  PathSet zero;
  zero.contract = PathContract::pairwise_disjoint;
  zero.paths = {{u}};
  zero.sources = {u};
  zero.sinks = {u};
  EXPECT_TRUE(verify_paths(g, r, zero).ok);

  const auto good = st_internally_disjoint_paths(r, u, Permutation{4, 3, 2, 1}, 3);
  EXPECT_TRUE(verify_paths(g, r, good).ok);
}
