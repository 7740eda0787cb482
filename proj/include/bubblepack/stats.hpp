#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bubblepack/perm.hpp"

namespace bubblepack {

inline constexpr int kStatsMaxArity = 8;

struct CrossCount {
  int i = 0;
  int j = 0;
  std::uint64_t edges = 0;
};

struct GraphStats {
  int n = 0;
  std::uint64_t vertices = 0;
  std::uint64_t edges = 0;
  int min_degree = 0;
  int max_degree = 0;
  bool bipartite = false;       // BFS 2-colouring, no parity shortcut
  bool out_involution = false;  // u'' = u and u' leaves u's main part
  bool out_injective = false;
  std::vector<CrossCount> cross;  // every ordered pair i != j
  int connectivity = 0;
  bool connectivity_exact = false;  // otherwise the least sampled local value
  std::size_t sampled_pairs = 0;

  bool regular() const noexcept { return min_degree == max_degree; }
  std::string to_text() const;
};

// Exhaustive structural statistics of B_n for n <= kStatsMaxArity: exact
// connectivity for n <= 4, seeded sampling of `pairs` pairs above.
GraphStats graph_stats(int n, std::size_t pairs = 200, std::uint64_t seed = 42);

}  // namespace bubblepack
