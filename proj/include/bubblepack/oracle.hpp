#pragma once

#include <cstdint>
#include <stop_token>
#include <string>
#include <vector>

#include "bubblepack/bubble_graph.hpp"
#include "bubblepack/packing.hpp"

namespace bubblepack {

inline constexpr int kOracleGuard = 30;

enum class UpperBoundSource { exhaustion, degree_lemma };

std::string to_string(UpperBoundSource s);

struct OracleResult {
  int value = 0;
  TreePacking witness;
  // degree-lemma: value equals the least terminal degree, so no search for
  // value+1 was needed. exhaustion: a packing of value+1 was ruled out.
  UpperBoundSource upper_bound_source = UpperBoundSource::exhaustion;
  std::uint64_t connectors = 0;  // minimal connectors generated
  std::uint64_t nodes = 0;       // search nodes visited
  bool cancelled = false;        // value is then only a lower bound
};

// Exact kappa_G(S) on a region of at most kOracleGuard vertices.
OracleResult max_tree_packing(const RegionSpec& r, const std::vector<Permutation>& S,
                              std::stop_token stop = {});

// delta, or delta-1 when two adjacent vertices both have minimum degree.
int degree_upper_bound(const RegionSpec& r, int k);

struct Kappa4Report {
  int n = 0;
  int value = 0;                     // min over all 4-sets, -1 if the bounds do not meet
  std::size_t subsets = 0;
  int builder_min = 0;               // least packing size the builder produced
  int upper_bound = 0;               // degree_upper_bound of B_n
  std::size_t oracle_checked = 0;    // subsets solved exactly by the oracle
  int oracle_min = 0;
  int oracle_max = 0;
  std::size_t builder_failures = 0;  // subsets where the packing did not verify
};

// n = 3: oracle on all 4-sets. n = 4: builder on all 4-sets, degree bound on
// top, oracle on `oracle_samples` seeded 4-sets.
Kappa4Report kappa4_exhaustive_report(int n, std::size_t oracle_samples = 100,
                                      std::uint64_t seed = 42);
int kappa4_exhaustive(int n);

}  // namespace bubblepack
