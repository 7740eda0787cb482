#include <gtest/gtest.h>

#include <random>
#include <set>

#include "bubblepack/bubble_graph.hpp"
#include "bubblepack/errors.hpp"
#include "naive.hpp"

using namespace bubblepack;

TEST(Neighbors, GeneratorOrder) {
  const BubbleGraph g3(3);
  EXPECT_EQ(g3.neighbors({1, 2, 3}), (std::vector<Permutation>{{2, 1, 3}, {1, 3, 2}}));
  const BubbleGraph g2(2);
  EXPECT_EQ(g2.neighbors({1, 2}), (std::vector<Permutation>{{2, 1}}));
}

TEST(Neighbors, RegularOnRandomVerticesOfB7) {
  const BubbleGraph g(7);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 1000; ++t) {
    const auto u = unrank(rng() % factorial(7), 7);
    const auto nb = g.neighbors(u);
    EXPECT_EQ(nb.size(), 6u);
    EXPECT_EQ(std::set<Permutation>(nb.begin(), nb.end()).size(), 6u);
    for (const auto& v : nb) EXPECT_TRUE(naive::adjacent(u, v));
  }
}

TEST(Adjacency, MatchesPairwiseDefinitionOnB4) {
  const BubbleGraph g(4);
  const auto vs = naive::all_perms(4);
  for (const auto& u : vs)
    for (const auto& v : vs) EXPECT_EQ(g.adjacent(u, v), naive::adjacent(u, v));
}

TEST(OutNeighbor, Examples) {
  const BubbleGraph g(3);
  EXPECT_EQ(g.out_neighbor({2, 1, 3}), (Permutation{2, 3, 1}));
  EXPECT_EQ(main_part(g.out_neighbor({2, 1, 3})), 1);
  EXPECT_EQ(main_part(Permutation{3, 1, 2}), 2);
  EXPECT_EQ(main_part(Permutation{2, 3, 1}), 1);
}

TEST(OutNeighbor, InvolutionOnB4AndInjectiveOnB7) {
  const BubbleGraph g4(4);
  for (const auto& u : naive::all_perms(4)) {
    EXPECT_EQ(g4.out_neighbor(g4.out_neighbor(u)), u);
    EXPECT_NE(main_part(g4.out_neighbor(u)), main_part(u));
  }
  const BubbleGraph g7(7);
  std::set<Permutation> outs;
  for (const auto& u : naive::all_perms(7)) outs.insert(g7.out_neighbor(u));
  EXPECT_EQ(outs.size(), 5040u);
}

TEST(MainPart, PartSizes) {
  std::map<int, int> count;
  for (const auto& u : naive::all_perms(5)) ++count[main_part(u)];
  for (int i = 1; i <= 5; ++i) EXPECT_EQ(count[i], 24);
}

TEST(Region, MemberCounts) {
  EXPECT_EQ(region_members(RegionSpec::whole(3)).size(), 6u);
  EXPECT_EQ(region_members(RegionSpec::parts(4, {1, 2})).size(), 12u);
  EXPECT_EQ(region_members(RegionSpec::suffix(5, {2, 1})).size(), 6u);
  const auto v21 = region_members(RegionSpec::suffix(5, {2, 1}));
  for (const auto& u : v21) EXPECT_TRUE(u(4) == 2 && u(5) == 1);
  EXPECT_TRUE(std::is_sorted(v21.begin(), v21.end()));
}

TEST(Region, MembersMatchPredicateAndRankOrder) {
  const auto r = RegionSpec::difference(RegionSpec::parts(5, {1, 3}), RegionSpec::suffix(5, {2, 1}));
  std::vector<Permutation> expect;
  for (const auto& u : naive::all_perms(5))
    if ((u(5) == 1 || u(5) == 3) && !(u(4) == 2 && u(5) == 1)) expect.push_back(u);
  EXPECT_EQ(region_members(r), expect);
}

TEST(Region, GuardRefusesLargeEnumeration) {
  try {
    region_members(RegionSpec::whole(10));
    FAIL() << "guard did not fire";
  } catch (const GuardExceeded& e) {
    EXPECT_EQ(e.estimate(), factorial(10));
  }
}

TEST(Region, SuffixOfOneSymbolIsMainPart) {
  EXPECT_EQ(region_members(RegionSpec::suffix(4, {3})), region_members(RegionSpec::parts(4, {3})));
}

TEST(RegionNeighbors, InducedDegrees) {
  const auto whole = RegionSpec::whole(3);
  const BubbleGraph g3(3);
  for (const auto& u : region_members(whole)) EXPECT_EQ(region_neighbors(whole, u), g3.neighbors(u));
  const auto v1 = RegionSpec::parts(5, {1});
  for (const auto& u : region_members(v1)) EXPECT_EQ(region_neighbors(v1, u).size(), 3u);
  const auto v12 = RegionSpec::parts(4, {1, 2});
  for (const auto& u : region_members(v12)) {
    const auto d = region_neighbors(v12, u).size();
    EXPECT_TRUE(d == 2 || d == 3);
  }
  EXPECT_THROW(region_neighbors(v1, Permutation{1, 2, 3, 4, 5}), std::invalid_argument);
}

TEST(CrossEdges, FactorialCounts) {
  EXPECT_EQ(cross_edge_count(BubbleGraph(4), 1, 2), 2u);
  EXPECT_EQ(cross_edge_count(BubbleGraph(5), 3, 4), 6u);
  const BubbleGraph g(5);
  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j)
      if (i != j) EXPECT_EQ(cross_edge_count(g, i, j), cross_edge_count(g, j, i));
  EXPECT_THROW(cross_edge_count(g, 2, 2), std::invalid_argument);
}

TEST(CrossEdges, AgreeWithPairwiseCount) {
  const auto vs = naive::all_perms(5);
  const BubbleGraph g(5);
  for (int i = 1; i <= 5; ++i)
    for (int j = i + 1; j <= 5; ++j) {
      std::uint64_t c = 0;
      for (const auto& u : vs)
        for (const auto& v : vs)
          if (u.last() == i && v.last() == j && naive::adjacent(u, v)) ++c;
      EXPECT_EQ(cross_edge_count(g, i, j), c);
    }
}

TEST(SpanningTree, SizesAndDeterminism) {
  const auto t3 = region_spanning_tree(RegionSpec::whole(3));
  EXPECT_EQ(t3.edges.size(), 5u);
  EXPECT_EQ(t3.vertices().size(), 6u);
  const auto r = RegionSpec::parts(4, {2, 3, 4});
  const auto t = region_spanning_tree(r);
  EXPECT_EQ(t.edges.size(), 17u);
  EXPECT_EQ(t.vertices().size(), 18u);
  EXPECT_TRUE(naive::packing_ok({}, {naive::edges_of(t)}));
  EXPECT_EQ(region_spanning_tree(r).edges, t.edges);
}

TEST(SpanningTree, DisconnectedRegionNamesWitnesses) {
  const auto r = RegionSpec::union_of(RegionSpec::suffix(4, {2, 1}), RegionSpec::suffix(4, {4, 3}));
  try {
    region_spanning_tree(r);
    FAIL() << "expected RegionDisconnected";
  } catch (const RegionDisconnected& e) {
    EXPECT_TRUE(r.contains(e.first_witness()));
    EXPECT_TRUE(r.contains(e.second_witness()));
  }
}

TEST(Structure, InvariantsUpToSeven) {
  for (int n = 2; n <= 7; ++n) {
    const BubbleGraph g(n);
    const auto vs = region_members(RegionSpec::whole(n));
    EXPECT_EQ(vs.size(), factorial(n));
    std::uint64_t deg = 0;
    for (const auto& u : vs) {
      const auto nb = g.neighbors(u);
      deg += nb.size();
      for (const auto& v : nb) EXPECT_NE(naive::inversions(u) % 2, naive::inversions(v) % 2);
    }
    EXPECT_EQ(deg / 2, g.edge_count());
    EXPECT_EQ(g.edge_count(), factorial(n) * static_cast<std::uint64_t>(n - 1) / 2);
  }
}

TEST(Structure, PartUnionsConnected) {
  for (int n = 3; n <= 5; ++n) {
    for (int mask = 1; mask < (1 << n) - 1; ++mask) {
      std::vector<int> I;
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1) I.push_back(i + 1);
      if (I.size() < 2) continue;
      EXPECT_NO_THROW(region_spanning_tree(RegionSpec::parts(n, I))) << "n=" << n << " mask=" << mask;
    }
  }
}

TEST(RegionText, ParseRoundTrip) {
  const auto r = RegionSpec::difference(RegionSpec::parts(5, {1, 2}), RegionSpec::suffix(5, {3, 1}));
  EXPECT_EQ(RegionSpec::parse(5, r.to_string()), r);
  EXPECT_EQ(RegionSpec::parse(4, "parts(1,2)"), RegionSpec::parts(4, {1, 2}));
  EXPECT_THROW(RegionSpec::parse(4, "parts(1,"), std::invalid_argument);
}

TEST(Dot, CycleAndRegionSizes) {
  const auto d3 = export_dot(RegionSpec::whole(3));
  std::size_t edges = 0;
  for (std::size_t p = d3.find(" -- "); p != std::string::npos; p = d3.find(" -- ", p + 1)) ++edges;
  EXPECT_EQ(edges, 6u);
  const auto d = export_dot(RegionSpec::parts(4, {1, 2}));
  std::size_t nodes = 0;
  for (const auto& u : naive::all_perms(4))
    if (d.find("\"" + to_string(u) + "\";") != std::string::npos) ++nodes;
  EXPECT_EQ(nodes, 12u);
}
