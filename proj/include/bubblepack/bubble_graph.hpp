#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bubblepack/packing.hpp"
#include "bubblepack/perm.hpp"

namespace bubblepack {

// Enumeration guard for explicit member lists.
inline constexpr std::uint64_t kRegionGuard = 1'000'000;

// The bubble-sort graph B_n: vertices are the n! permutations of [n], u ~ v
// iff v = u[i,i+1]. Adjacency is computed from the one-line notation.
class BubbleGraph {
 public:
  explicit BubbleGraph(int n);

  int arity() const noexcept { return n_; }
  std::uint64_t vertex_count() const noexcept { return factorial(n_); }
  std::uint64_t edge_count() const noexcept {
    return factorial(n_) * static_cast<std::uint64_t>(n_ - 1) / 2;
  }
  bool contains(const Permutation& u) const noexcept { return u.arity() == n_; }

  // [u[1,2], ..., u[n-1,n]] in generator order.
  std::vector<Permutation> neighbors(const Permutation& u) const;
  // u[n-1,n], the unique neighbour of u outside its main part.
  Permutation out_neighbor(const Permutation& u) const;
  bool adjacent(const Permutation& u, const Permutation& v) const;

 private:
  int n_;
};

// Index of the main part holding u, i.e. its last symbol.
inline int main_part(const Permutation& u) { return u.last(); }

// Number of edges between main parts V_i and V_j.
std::uint64_t cross_edge_count(const BubbleGraph& g, int i, int j);

// Vertex subset of B_n described by a small closed algebra: the whole graph,
// a union of main parts, a suffix class (fixed trailing symbols), and the
// difference or union of two regions.
class RegionSpec {
 public:
  enum class Kind { whole, parts, suffix, difference, union_of };

  static RegionSpec whole(int n);
  static RegionSpec parts(int n, std::vector<int> symbols);
  // Tail listed left to right and ending at position n, so suffix(n, {j, i})
  // is V_j^i and suffix(n, {i}) is V_i.
  static RegionSpec suffix(int n, std::vector<int> tail);
  static RegionSpec difference(const RegionSpec& a, const RegionSpec& b);
  static RegionSpec union_of(const RegionSpec& a, const RegionSpec& b);

  int arity() const noexcept { return n_; }
  Kind kind() const noexcept { return kind_; }
  const std::vector<int>& symbols() const noexcept { return symbols_; }
  const RegionSpec& left() const { return *left_; }
  const RegionSpec& right() const { return *right_; }

  bool contains(const Permutation& u) const;
  // Exact for whole/parts/suffix, an upper bound for composite regions.
  std::uint64_t size_bound() const;

  // Region with every symbol s replaced by map(s).
  RegionSpec relabeled(const Permutation& symbol_map) const;

  // "whole", "parts(1,2)", "suffix(2,1)", "minus(A,B)", "union(A,B)".
  std::string to_string() const;
  static RegionSpec parse(int n, std::string_view text);

  friend bool operator==(const RegionSpec& a, const RegionSpec& b);

 private:
  RegionSpec() = default;

  int n_ = 0;
  Kind kind_ = Kind::whole;
  std::vector<int> symbols_;
  std::shared_ptr<const RegionSpec> left_;
  std::shared_ptr<const RegionSpec> right_;
};

// Members in rank order. Throws GuardExceeded when the region may exceed
// `guard` vertices.
std::vector<Permutation> region_members(const RegionSpec& r,
                                        std::uint64_t guard = kRegionGuard);

// Neighbours of u inside the induced subgraph, in generator order.
std::vector<Permutation> region_neighbors(const RegionSpec& r, const Permutation& u);

// BFS tree of the induced subgraph rooted at its rank-least member, children
// visited in rank order. Throws RegionDisconnected.
TreeCertificate region_spanning_tree(const RegionSpec& r);

// Snapshot of an induced subgraph with dense local ids assigned in rank
// order. Built per call by the path engines and the builder.
class RegionGraph {
 public:
  explicit RegionGraph(const RegionSpec& r, std::uint64_t guard = kRegionGuard);

  const RegionSpec& spec() const noexcept { return spec_; }
  int arity() const noexcept { return spec_.arity(); }
  int size() const noexcept { return static_cast<int>(vertices_.size()); }
  const Permutation& vertex(int id) const { return vertices_[static_cast<std::size_t>(id)]; }
  // -1 when u is not a member.
  int index_of(const Permutation& u) const;
  // Neighbour ids in ascending (rank) order.
  std::span<const int> neighbors(int id) const {
    const auto b = offsets_[static_cast<std::size_t>(id)];
    const auto e = offsets_[static_cast<std::size_t>(id) + 1];
    return {adjacency_.data() + b, e - b};
  }
  // Local id of v . [i,i+1], or -1 when it leaves the region.
  int swap_adjacent(int id, int i) const;

 private:
  RegionSpec spec_;
  bool dense_ = false;  // whole graph: local id == rank
  std::vector<Permutation> vertices_;
  std::vector<std::uint64_t> ranks_;
  std::vector<std::size_t> offsets_;
  std::vector<int> adjacency_;
};

// Graphviz rendering of an enumerable region. With an overlay, tree edges are
// drawn in one colour per tree and terminals are highlighted.
std::string export_dot(const RegionSpec& r, const TreePacking* overlay = nullptr);

}  // namespace bubblepack
