#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bubblepack/perm.hpp"

namespace bubblepack {

// Undirected edge stored with the rank-lesser endpoint first.
struct Edge {
  Permutation a;
  Permutation b;

  Edge() = default;
  Edge(Permutation u, Permutation v) : a(std::move(u)), b(std::move(v)) {
    if (b < a) std::swap(a, b);
  }

  friend auto operator<=>(const Edge&, const Edge&) = default;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct TreeCertificate {
  std::vector<Edge> edges;
  std::vector<Permutation> terminals;
  // Case labels and notes describing how the tree was produced.
  std::vector<std::string> provenance;

  std::vector<Permutation> vertices() const;
};

struct TreePacking {
  int n = 0;
  std::vector<Permutation> terminals;
  std::vector<TreeCertificate> trees;
  std::vector<bool> fallback_used;  // parallel to trees
  std::vector<std::string> case_trail;

  bool any_fallback() const;
};

}  // namespace bubblepack
