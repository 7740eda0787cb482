#include "bubblepack/survey.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "bubblepack/errors.hpp"
#include "bubblepack/sampling.hpp"
#include "bubblepack/tree_builder.hpp"
#include "bubblepack/verifier.hpp"

namespace bubblepack {

namespace {

struct Outcome {
  int case_id = 0;
  std::string subcase;
  std::size_t size = 0;
  bool fallback = false;
  bool pass = false;
  std::string error;
};

Outcome run_one(const BubbleGraph& g, const std::vector<Permutation>& S) {
  Outcome o;
  try {
    const BuildTrace t = build_trees_traced(g.arity(), S);
    o.case_id = t.plan.case_id;
    o.subcase = t.plan.subcase.empty() ? std::to_string(t.plan.case_id) : t.plan.subcase;
    o.size = t.packing.trees.size();
    o.fallback = t.packing.any_fallback();
    const VerifyReport rep = verify_packing(g, S, t.packing);
    o.pass = rep.ok && o.size == static_cast<std::size_t>(g.arity() - 2);
    if (!rep.ok) {
      o.error = rep.to_text();
    } else if (!o.pass) {
      o.error = std::to_string(o.size) + " trees";
    }
  } catch (const ConstructionFailure& e) {
    o.case_id = e.plan().case_id;
    o.subcase = e.plan().subcase.empty() ? std::to_string(e.plan().case_id) : e.plan().subcase;
    o.error = e.what();
  } catch (const std::exception& e) {
    o.error = e.what();
  }
  return o;
}

std::string set_text(const std::vector<Permutation>& S) {
  std::string s = "{";
  for (std::size_t i = 0; i < S.size(); ++i) s += (i ? " " : "") + to_string(S[i]);
  return s + "}";
}

}  // namespace

std::vector<std::vector<Permutation>> survey_population(const SurveyOptions& opt) {
  const int n = opt.n;
  if (n < 3 || n > kBuildMaxArity) throw std::invalid_argument("survey: n must lie in [3, 9]");
  const std::uint64_t N = factorial(n);
  std::vector<std::vector<std::uint64_t>> ranks;
  if (opt.mode == SurveyMode::all) {
    if (n > 4) {
      throw GuardExceeded("survey: mode all is limited to n <= 4", N, factorial(4));
    }
    for (std::uint64_t a = 0; a < N; ++a)
      for (std::uint64_t b = a + 1; b < N; ++b)
        for (std::uint64_t c = b + 1; c < N; ++c)
          for (std::uint64_t d = c + 1; d < N; ++d) ranks.push_back({a, b, c, d});
  } else {
    std::mt19937_64 rng(opt.seed);
    for (std::size_t i = 0; i < opt.count; ++i) {
      auto r = distinct_below(rng, N, 4);
      std::sort(r.begin(), r.end());
      ranks.push_back(std::move(r));
    }
    std::sort(ranks.begin(), ranks.end());
  }
  std::vector<std::vector<Permutation>> out;
  out.reserve(ranks.size());
  for (const auto& r : ranks) {
    std::vector<Permutation> S;
    for (auto x : r) S.push_back(unrank(x, n));
    out.push_back(std::move(S));
  }
  return out;
}

SurveyReport run_survey(const SurveyOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  const auto population = survey_population(opt);
  const BubbleGraph g(opt.n);
  std::vector<Outcome> outcomes(population.size());
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < population.size(); i = next++) outcomes[i] = run_one(g, population[i]);
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(opt.jobs, static_cast<unsigned>(population.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(work);
    work();
  }
  SurveyReport rep;
  rep.n = opt.n;
  rep.instances = population.size();
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const Outcome& o = outcomes[i];
    ++rep.cases[o.case_id];
    auto& t = rep.subcases[o.subcase];
    ++t.total;
    if (o.fallback) {
      ++t.fallback;
      ++rep.fallback_instances;
    }
    if (o.pass) {
      ++rep.passed;
      ++rep.sizes[o.size];
    } else {
      ++t.failed;
      ++rep.failed;
      if (rep.failures.size() < opt.keep_failures) rep.failures.push_back(set_text(population[i]) + ": " + o.error);
    }
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::string SurveyReport::to_text() const {
  std::string s;
  char buf[160];
  std::snprintf(buf, sizeof buf, "n=%d instances=%zu pass=%zu fail=%zu fallback=%zu (%.2f%%) time=%.2fs\n", n,
                instances, passed, failed, fallback_instances,
                instances ? 100.0 * static_cast<double>(fallback_instances) / static_cast<double>(instances) : 0.0,
                seconds);
  s += buf;
  s += "packing sizes:";
  for (const auto& [k, v] : sizes) s += " " + std::to_string(k) + "x" + std::to_string(v);
  s += "\ncases:";
  for (const auto& [k, v] : cases) s += " " + std::to_string(k) + ":" + std::to_string(v);
  s += "\nsubcase          total  fallback   rate  failed\n";
  for (const auto& [k, t] : subcases) {
    std::snprintf(buf, sizeof buf, "%-14s %7zu %9zu %5.1f%% %7zu\n", k.c_str(), t.total, t.fallback,
                  t.total ? 100.0 * static_cast<double>(t.fallback) / static_cast<double>(t.total) : 0.0,
                  t.failed);
    s += buf;
  }
  for (const auto& f : failures) s += "FAIL " + f + "\n";
  return s;
}

}  // namespace bubblepack
