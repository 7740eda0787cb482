#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bubblepack/bubble_graph.hpp"
#include "bubblepack/perm.hpp"

namespace bubblepack {

enum class PathContract {
  pairwise_disjoint,    // (X,Y)-paths, no shared vertex at all
  internally_disjoint,  // (u,v)-paths sharing only u and v
  fan,                  // paths from x to distinct members of Y, sharing only x
};

std::string to_string(PathContract c);

struct PathSet {
  std::vector<std::vector<Permutation>> paths;
  PathContract contract = PathContract::pairwise_disjoint;
  // pairwise: sources are X, sinks are Y. internally: {u} and {v}. fan: {x} and Y.
  std::vector<Permutation> sources;
  std::vector<Permutation> sinks;
};

enum class TerminalRole { X, Y, Z, W, F, F1 };

std::string to_string(TerminalRole role);

struct TerminalSet {
  TerminalRole role = TerminalRole::X;
  std::vector<Permutation> vertices;
};

// Unit-capacity network with optional arc costs. Arcs are scanned in
// insertion order, which fixes every tie-break.
class FlowNetwork {
 public:
  explicit FlowNetwork(int nodes);

  int add_arc(int from, int to, int capacity, long cost = 0);
  int node_count() const noexcept { return static_cast<int>(head_.size()); }

  // Edmonds-Karp; stops once `limit` units are routed.
  int max_flow(int s, int t, int limit);
  // Successive shortest paths (Bellman-Ford queue). Returns units routed;
  // adds the total cost to *cost when given.
  int min_cost_flow(int s, int t, int limit, long* cost = nullptr);

  // Nodes reachable from s in the residual network.
  std::vector<char> residual_reachable(int s) const;

  struct Arc {
    int to;
    int cap;
    long cost;
    int rev;
    bool forward;
  };
  const Arc& arc(int id) const { return arcs_[static_cast<std::size_t>(id)]; }
  std::span<const int> out_arcs(int node) const { return head_[static_cast<std::size_t>(node)]; }
  // Flow carried by a forward arc.
  int flow(int id) const { return arcs_[static_cast<std::size_t>(arcs_[static_cast<std::size_t>(id)].rev)].cap; }
  void consume(int id) {
    auto& a = arcs_[static_cast<std::size_t>(id)];
    a.cap += 1;
    arcs_[static_cast<std::size_t>(a.rev)].cap -= 1;
  }

 private:
  void push(std::vector<int>& parent_arc, int s, int t);

  std::vector<std::vector<int>> head_;
  std::vector<Arc> arcs_;
};

// Local-id engines over a region snapshot. `blocked` (size g.size(), may be
// empty) marks vertices that no path may use. They return as many paths as
// exist up to k, and when fewer than k exist, a separating vertex cut.
struct LocalPaths {
  std::vector<std::vector<int>> paths;
  std::vector<int> cut;
  bool direct_edge = false;
};

LocalPaths local_set_paths(const RegionGraph& g, std::span<const char> blocked,
                           std::span<const int> X, std::span<const int> Y, std::size_t k);
LocalPaths local_fan_paths(const RegionGraph& g, std::span<const char> blocked, int x,
                           std::span<const int> Y, std::size_t k);
// Every path carries exactly one neighbour of u and one of v.
LocalPaths local_st_paths(const RegionGraph& g, std::span<const char> blocked, int u, int v,
                          std::size_t k);
// Number of internally disjoint (u,v)-paths, capped at `limit`.
int local_connectivity(const RegionGraph& g, int u, int v, int limit);

// Library entry points. All throw PathsInfeasible with a cut of fewer than k
// vertices when k paths do not exist.
PathSet disjoint_set_paths(const RegionSpec& r, const TerminalSet& X, const TerminalSet& Y,
                           std::size_t k);
PathSet fan_paths(const RegionSpec& r, const Permutation& x, const TerminalSet& Y, std::size_t k);
PathSet st_internally_disjoint_paths(const RegionSpec& r, const Permutation& u,
                                     const Permutation& v, std::size_t k);

inline constexpr std::uint64_t kConnectivityGuard = 10'000;

// Exact vertex connectivity (Even's pair-reduction). Complete regions give
// |V|-1. Throws GuardExceeded above kConnectivityGuard vertices.
int region_connectivity(const RegionSpec& r);

struct SampledConnectivity {
  int min_local = 0;            // min over sampled pairs of kappa(u,v)
  std::size_t pairs = 0;
  Permutation worst_u;
  Permutation worst_v;
};

// kappa(u,v) over `pairs` seeded random pairs (adjacent pairs count their edge).
// Each sampled pair is certified to have min_local disjoint paths.
SampledConnectivity region_connectivity_sampled(const RegionSpec& r, std::size_t pairs,
                                                std::uint64_t seed, int limit);

}  // namespace bubblepack
