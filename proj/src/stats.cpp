#include "bubblepack/stats.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>

#include "bubblepack/bubble_graph.hpp"
#include "bubblepack/errors.hpp"
#include "bubblepack/menger.hpp"

namespace bubblepack {

GraphStats graph_stats(int n, std::size_t pairs, std::uint64_t seed) {
  if (n < 2 || n > kStatsMaxArity) {
    throw GuardExceeded("stats: n must lie in [2, 8]", static_cast<std::uint64_t>(n), kStatsMaxArity);
  }
  const BubbleGraph g(n);
  const RegionGraph rg(RegionSpec::whole(n));
  GraphStats st;
  st.n = n;
  st.vertices = static_cast<std::uint64_t>(rg.size());
  st.min_degree = n;
  std::uint64_t degree_sum = 0;
  for (int v = 0; v < rg.size(); ++v) {
    const int d = static_cast<int>(rg.neighbors(v).size());
    st.min_degree = std::min(st.min_degree, d);
    st.max_degree = std::max(st.max_degree, d);
    degree_sum += static_cast<std::uint64_t>(d);
  }
  st.edges = degree_sum / 2;

  std::vector<int> colour(static_cast<std::size_t>(rg.size()), -1);
  st.bipartite = true;
  for (int s = 0; s < rg.size() && st.bipartite; ++s) {
    if (colour[static_cast<std::size_t>(s)] >= 0) continue;
    colour[static_cast<std::size_t>(s)] = 0;
    std::deque<int> q{s};
    while (!q.empty() && st.bipartite) {
      const int v = q.front();
      q.pop_front();
      for (int u : rg.neighbors(v)) {
        auto& c = colour[static_cast<std::size_t>(u)];
        if (c < 0) {
          c = 1 - colour[static_cast<std::size_t>(v)];
          q.push_back(u);
        } else if (c == colour[static_cast<std::size_t>(v)]) {
          st.bipartite = false;
        }
      }
    }
  }

  st.out_involution = true;
  std::vector<char> hit(static_cast<std::size_t>(rg.size()), 0);
  std::size_t distinct = 0;
  for (int v = 0; v < rg.size(); ++v) {
    const Permutation& u = rg.vertex(v);
    const Permutation o = g.out_neighbor(u);
    if (g.out_neighbor(o) != u || main_part(o) == main_part(u) || !g.adjacent(u, o)) st.out_involution = false;
    auto& h = hit[static_cast<std::size_t>(rg.index_of(o))];
    if (!h) ++distinct;
    h = 1;
  }
  st.out_injective = distinct == static_cast<std::size_t>(rg.size());

  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j) st.cross.push_back({i, j, cross_edge_count(g, i, j)});

  if (n <= 4) {
    st.connectivity = region_connectivity(RegionSpec::whole(n));
    st.connectivity_exact = true;
  } else {
    const auto s = region_connectivity_sampled(RegionSpec::whole(n), pairs, seed, n - 1);
    st.connectivity = s.min_local;
    st.sampled_pairs = s.pairs;
  }
  return st;
}

std::string GraphStats::to_text() const {
  std::string s;
  char buf[200];
  std::snprintf(buf, sizeof buf, "n=%d |V|=%llu |E|=%llu\n", n, static_cast<unsigned long long>(vertices),
                static_cast<unsigned long long>(edges));
  s += buf;
  std::snprintf(buf, sizeof buf, "degree: min %d max %d (%s)\n", min_degree, max_degree,
                regular() ? "regular" : "irregular");
  s += buf;
  s += std::string("bipartite: ") + (bipartite ? "yes" : "no") + "\n";
  s += std::string("out-neighbour: involution ") + (out_involution ? "yes" : "no") + ", injective " +
       (out_injective ? "yes" : "no") + "\n";
  std::uint64_t lo = cross.empty() ? 0 : cross.front().edges;
  std::uint64_t hi = lo;
  for (const auto& c : cross) {
    lo = std::min(lo, c.edges);
    hi = std::max(hi, c.edges);
  }
  std::snprintf(buf, sizeof buf, "cross-edges: %zu ordered part pairs, %llu..%llu per pair\n", cross.size(),
                static_cast<unsigned long long>(lo), static_cast<unsigned long long>(hi));
  s += buf;
  for (const auto& c : cross) {
    std::snprintf(buf, sizeof buf, "  V%d-V%d %llu\n", c.i, c.j, static_cast<unsigned long long>(c.edges));
    s += buf;
  }
  if (connectivity_exact) {
    std::snprintf(buf, sizeof buf, "connectivity: %d (exact)\n", connectivity);
  } else {
    std::snprintf(buf, sizeof buf, "connectivity: >= %d on %zu sampled pairs\n", connectivity, sampled_pairs);
  }
  s += buf;
  return s;
}

}  // namespace bubblepack
