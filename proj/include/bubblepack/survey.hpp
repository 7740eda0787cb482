#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bubblepack/perm.hpp"

namespace bubblepack {

inline constexpr std::uint64_t kDefaultSeed = 42;

enum class SurveyMode { all, sample };

struct SurveyOptions {
  int n = 4;
  SurveyMode mode = SurveyMode::all;
  std::size_t count = 1000;  // sample mode only
  std::uint64_t seed = kDefaultSeed;
  unsigned jobs = 1;
  std::size_t keep_failures = 5;
};

// 4-sets in rank-tuple order. `all` needs n <= 4; `sample` draws `count`
// sets of four distinct ranks from mt19937_64(seed).
std::vector<std::vector<Permutation>> survey_population(const SurveyOptions& opt);

struct SubcaseTally {
  std::size_t total = 0;
  std::size_t fallback = 0;
  std::size_t failed = 0;
};

struct SurveyReport {
  int n = 0;
  std::size_t instances = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t fallback_instances = 0;
  std::map<int, std::size_t> cases;            // case id -> instances
  std::map<std::string, SubcaseTally> subcases;
  std::map<std::size_t, std::size_t> sizes;    // packing size -> instances
  std::vector<std::string> failures;           // first few, in population order
  double seconds = 0;

  bool ok() const noexcept { return failed == 0 && instances > 0; }
  std::string to_text() const;
};

// Builds and independently verifies every instance; an instance passes when
// it yields n-2 verifier-clean trees. Aggregation follows population order,
// so the report does not depend on `jobs`.
SurveyReport run_survey(const SurveyOptions& opt);

}  // namespace bubblepack
