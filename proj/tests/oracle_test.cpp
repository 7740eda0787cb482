#include <gtest/gtest.h>

#include <random>

#include "bubblepack/errors.hpp"
#include "bubblepack/oracle.hpp"
#include "bubblepack/tree_builder.hpp"
#include "bubblepack/verifier.hpp"
#include "naive.hpp"

using namespace bubblepack;

namespace {

std::vector<Permutation> pick(std::mt19937_64& rng, const std::vector<Permutation>& from, std::size_t k) {
  std::vector<Permutation> S;
  while (S.size() < k) {
    const auto& v = from[rng() % from.size()];
    if (std::find(S.begin(), S.end(), v) == S.end()) S.push_back(v);
  }
  return S;
}

}  // namespace

TEST(Oracle, CycleSubsets) {
  const auto vs = naive::all_perms(3);
  for (std::size_t k : {3u, 4u}) {
    naive::any_subset(6, static_cast<int>(k), [&](const std::vector<int>& idx) {
      std::vector<Permutation> S;
      for (int i : idx) S.push_back(vs[static_cast<std::size_t>(i)]);
      const auto res = max_tree_packing(RegionSpec::whole(3), S);
      EXPECT_EQ(res.value, 1);
      EXPECT_TRUE(verify_packing(BubbleGraph(3), S, res.witness).ok);
      EXPECT_EQ(res.witness.trees.size(), 1u);
      return false;
    });
  }
}

TEST(Oracle, AgreesWithEdgeSubsetEnumeration) {
  std::mt19937_64 rng(3);
  for (const auto& r : {RegionSpec::parts(4, {1, 2}), RegionSpec::parts(4, {3}),
                        RegionSpec::union_of(RegionSpec::parts(4, {2}), RegionSpec::suffix(4, {1, 3}))}) {
    const auto vs = region_members(r);
    const naive::Graph g(vs);
    for (int t = 0; t < 12; ++t) {
      const auto S = pick(rng, vs, 3 + static_cast<std::size_t>(t % 2));
      const auto res = max_tree_packing(r, S);
      EXPECT_EQ(res.value, naive::max_packing(g, S)) << r.to_string();
      EXPECT_TRUE(naive::packing_ok(S, res.witness));
    }
  }
}

TEST(Oracle, SampledFourSetsOfB4) {
  std::mt19937_64 rng(42);
  const auto vs = naive::all_perms(4);
  for (int t = 0; t < 25; ++t) {
    const auto S = pick(rng, vs, 4);
    const auto res = max_tree_packing(RegionSpec::whole(4), S);
    EXPECT_EQ(res.value, 2);
    EXPECT_TRUE(naive::packing_ok(S, res.witness));
    EXPECT_LE(build_trees(4, S).trees.size(), static_cast<std::size_t>(res.value));
    EXPECT_LE(res.value, degree_upper_bound(RegionSpec::whole(4), 4));
  }
}

TEST(Oracle, MonotoneUnderRegionGrowth) {
  std::mt19937_64 rng(5);
  const auto inner = RegionSpec::parts(4, {1});
  const auto mid = RegionSpec::parts(4, {1, 2});
  const auto outer = RegionSpec::whole(4);
  const auto vs = region_members(inner);
  for (int t = 0; t < 8; ++t) {
    const auto S = pick(rng, vs, 3);
    const int a = max_tree_packing(inner, S).value;
    const int b = max_tree_packing(mid, S).value;
    const int c = max_tree_packing(outer, S).value;
    EXPECT_LE(a, b);
    EXPECT_LE(b, c);
  }
}

TEST(Oracle, GuardRefusesLargeRegions) {
  const std::vector<Permutation> S{{1, 2, 3, 4, 5}, {2, 1, 3, 4, 5}, {1, 3, 2, 4, 5}, {1, 2, 4, 3, 5}};
  EXPECT_THROW(max_tree_packing(RegionSpec::whole(5), S), GuardExceeded);
}

TEST(Oracle, CancellationStopsSearch) {
  std::stop_source src;
  src.request_stop();
  const std::vector<Permutation> S{{1, 2, 3, 4}, {2, 1, 3, 4}, {4, 3, 2, 1}, {3, 1, 4, 2}};
  const auto res = max_tree_packing(RegionSpec::whole(4), S, src.get_token());
  EXPECT_TRUE(res.cancelled);
}

TEST(DegreeBound, Values) {
  EXPECT_EQ(degree_upper_bound(RegionSpec::whole(4), 4), 2);
  EXPECT_EQ(degree_upper_bound(RegionSpec::whole(5), 4), 3);
  EXPECT_EQ(degree_upper_bound(RegionSpec::whole(3), 4), 1);
  EXPECT_EQ(degree_upper_bound(RegionSpec::parts(5, {2}), 3), 2);
}

TEST(Kappa4, Exhaustive) {
  EXPECT_EQ(kappa4_exhaustive(3), 1);
  const auto rep = kappa4_exhaustive_report(4, 20, 42);
  EXPECT_EQ(rep.value, 2);
  EXPECT_EQ(rep.subsets, 10626u);
  EXPECT_EQ(rep.builder_min, 2);
  EXPECT_EQ(rep.upper_bound, 2);
  EXPECT_EQ(rep.oracle_checked, 20u);
  EXPECT_EQ(rep.oracle_min, 2);
  EXPECT_EQ(rep.builder_failures, 0u);
}
