#pragma once

#include <string>
#include <vector>

#include "bubblepack/bubble_graph.hpp"
#include "bubblepack/menger.hpp"
#include "bubblepack/packing.hpp"

namespace bubblepack {

enum class ViolationKind {
  not_an_edge,
  not_a_tree,
  terminal_missing,
  edge_overlap,
  vertex_overlap_beyond_s,
  contract_breach,
};

std::string to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  int item = -1;   // tree or path index
  int other = -1;  // second tree or path for pairwise checks
  std::vector<Permutation> witness;
  std::string detail;
};

struct VerifyStats {
  std::vector<std::size_t> sizes;  // edges per tree, or edges per path
  std::size_t vertices_touched = 0;
};

struct VerifyReport {
  bool ok = true;
  std::vector<Violation> violations;
  VerifyStats stats;

  void add(Violation v) {
    ok = false;
    violations.push_back(std::move(v));
  }
  std::string to_text() const;
};

// Checks each tree (real edges, connected, acyclic, spans S) and each pair
// (no shared edge, shared vertices exactly S). Reports every violation.
VerifyReport verify_packing(const BubbleGraph& g, const std::vector<Permutation>& S,
                            const TreePacking& p);

// Checks simplicity, edges inside r, and the declared contract.
VerifyReport verify_paths(const BubbleGraph& g, const RegionSpec& r, const PathSet& ps);

}  // namespace bubblepack
