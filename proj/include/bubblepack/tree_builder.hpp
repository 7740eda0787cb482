#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bubblepack/bubble_graph.hpp"
#include "bubblepack/menger.hpp"
#include "bubblepack/packing.hpp"

namespace bubblepack {

// Largest arity build_trees accepts (it snapshots the whole graph).
inline constexpr int kBuildMaxArity = 9;

// A named vertex with its defining equation value = base . [p1,p1+1] . [p2,p2+1] ...
struct Anchor {
  std::string name;
  Permutation value;
  std::string base;         // empty for the terminals themselves
  std::vector<int> swaps;   // adjacent-transposition positions applied to base
};

struct CasePlan {
  int n = 0;
  int case_id = 0;            // 1..5, 0 for the n = 3 base case
  std::string subcase;        // e.g. "2.2.1"; filled by the case builders
  std::vector<Permutation> S;  // as given
  // Symbol relabelling that moves the instance to the canonical parts used by
  // the case analysis: canonical vertex = compose(relabel, original vertex).
  Permutation relabel;
  // Roles x, y, z, w in original coordinates.
  Permutation x, y, z, w;
  std::vector<Anchor> anchors;              // original coordinates
  std::vector<TerminalSet> terminal_sets;   // original coordinates
  std::vector<RegionSpec> regions;          // original coordinates
  std::vector<std::string> notes;

  const Anchor* find_anchor(const std::string& name) const;
};

// Thrown only when the scripted construction and the fallback both fail.
class ConstructionFailure : public std::runtime_error {
 public:
  ConstructionFailure(const std::string& what, CasePlan plan)
      : std::runtime_error(what), plan_(std::move(plan)) {}
  const CasePlan& plan() const noexcept { return plan_; }

 private:
  CasePlan plan_;
};

CasePlan classify_case(int n, const std::vector<Permutation>& S);

// n-2 internally disjoint trees connecting S in B_n (n >= 3).
TreePacking build_trees(int n, const std::vector<Permutation>& S);

TreePacking build_case1(const CasePlan& plan);
TreePacking build_case2(const CasePlan& plan);
TreePacking build_case3(const CasePlan& plan);
TreePacking build_case4(const CasePlan& plan);
TreePacking build_case5(const CasePlan& plan);

// k trees connecting three terminals inside a suffix class (or whole graph).
TreePacking steiner_packing_k3(const RegionSpec& r, const std::vector<Permutation>& S3, int k);

// Completes `partial` to k trees inside r by flow-seeded greedy growth.
// Trees of `partial` are kept where possible; added trees carry the fallback
// flag. Throws ConstructionFailure when the budget runs out.
TreePacking search_fallback(const RegionSpec& r, const std::vector<Permutation>& S, int k,
                            const TreePacking& partial);

// Attach attempts allowed per requested tree.
inline constexpr std::uint64_t kFallbackBudgetPerTree = 10'000;

// Names of anchors whose stored value disagrees with their defining equation.
std::vector<std::string> check_anchor_formulas(const CasePlan& plan);

// The plan that build_trees used for its last top-level case, for reports.
struct BuildTrace {
  CasePlan plan;
  TreePacking packing;
};
BuildTrace build_trees_traced(int n, const std::vector<Permutation>& S);

}  // namespace bubblepack
