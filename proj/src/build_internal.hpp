#pragma once

#include <vector>

#include "bubblepack/packing.hpp"
#include "bubblepack/perm.hpp"
#include "bubblepack/tree_builder.hpp"

namespace bubblepack::detail {

// BFS spanning tree of the edge union rooted at the least terminal, with
// non-terminal leaves pruned. Edges not reachable from the root are dropped.
TreeCertificate normalize_tree(const TreeCertificate& tree, const std::vector<Permutation>& S);

// Vertex u of B_n with u(n) = i, seen in B_{n-1} by dropping the last
// symbol and closing the gap in the alphabet.
Permutation drop_last(const Permutation& u);
// Inverse of drop_last for a fixed tail symbol i.
Permutation append_symbol(const Permutation& v, int i);

Permutation relabel(const Permutation& map, const Permutation& u);

// Scripted packing, then verification, then search_fallback on the clean
// prefix. Records the outcome on the packing's case trail.
TreePacking finish(const CasePlan& plan, TreePacking scripted, const std::string& label);

}  // namespace bubblepack::detail
