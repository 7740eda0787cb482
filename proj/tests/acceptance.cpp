// Acceptance run: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <thread>
#include <string>

#include "bubblepack/bubble_graph.hpp"
#include "bubblepack/certificate.hpp"
#include "bubblepack/errors.hpp"
#include "bubblepack/menger.hpp"
#include "bubblepack/oracle.hpp"
#include "bubblepack/sampling.hpp"
#include "bubblepack/stats.hpp"
#include "bubblepack/survey.hpp"
#include "bubblepack/tree_builder.hpp"
#include "bubblepack/verifier.hpp"
#include "mutation.hpp"
#include "naive.hpp"

using namespace bubblepack;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::vector<SurveyReport> g_reports;

SurveyReport survey(int n, SurveyMode mode, std::size_t count) {
  SurveyOptions opt;
  opt.n = n;
  opt.mode = mode;
  opt.count = count;
  opt.seed = kDefaultSeed;
  opt.jobs = std::max(1u, std::thread::hardware_concurrency());
  auto rep = run_survey(opt);
  g_reports.push_back(rep);
  return rep;
}

// Every survey instance rebuilt and checked by the reference checker.
bool reference_checked(const SurveyOptions& opt) {
  for (const auto& S : survey_population(opt)) {
    const auto p = build_trees(opt.n, S);
    if (p.trees.size() != static_cast<std::size_t>(opt.n - 2) || !naive::packing_ok(S, p)) return false;
  }
  return true;
}

std::vector<std::vector<Permutation>> sampled_sets(int n, std::size_t k, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<Permutation>> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<Permutation> S;
    for (auto r : distinct_below(rng, factorial(n), k)) S.push_back(unrank(r, n));
    out.push_back(std::move(S));
  }
  return out;
}

Outcome ac1() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto rep = survey(3, SurveyMode::all, 0);
  o.require(rep.instances == 15 && rep.passed == 15, "survey " + std::to_string(rep.passed) + "/15");
  o.require(rep.sizes == std::map<std::size_t, std::size_t>{{1, 15}}, "packing size not 1");
  int lo = 99;
  int hi = -1;
  const auto vs = naive::all_perms(3);
  const naive::Graph g(vs);
  naive::any_subset(6, 4, [&](const std::vector<int>& idx) {
    std::vector<Permutation> S;
    for (int i : idx) S.push_back(vs[static_cast<std::size_t>(i)]);
    const auto res = max_tree_packing(RegionSpec::whole(3), S);
    lo = std::min(lo, res.value);
    hi = std::max(hi, res.value);
    if (res.value != naive::max_packing(g, S)) lo = -1;
    return false;
  });
  const int ub = degree_upper_bound(RegionSpec::whole(3), 4);
  o.require(lo == 1 && hi == 1, "oracle range " + std::to_string(lo) + ".." + std::to_string(hi));
  o.require(ub == 1, "degree bound " + std::to_string(ub));
  o.require(kappa4_exhaustive(3) == 1, "kappa4_exhaustive(3)");
  const double s = since(t0);
  o.require(s < 1.0, "runtime " + std::to_string(s) + "s");
  char buf[160];
  std::snprintf(buf, sizeof buf, "15/15 one-tree packings, oracle kappa=1 on all 15, degree bound 1, %.2fs", s);
  if (o.pass) o.detail = buf;
  return o;
}

Outcome ac2() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto rep = survey(4, SurveyMode::all, 0);
  o.require(rep.instances == 10626 && rep.passed == 10626, "survey " + std::to_string(rep.passed) + "/10626");
  o.require(rep.sizes == std::map<std::size_t, std::size_t>{{2, 10626}}, "packing size not 2");
  SurveyOptions all;
  all.n = 4;
  o.require(reference_checked(all), "reference checker rejected a packing");
  const int ub = degree_upper_bound(RegionSpec::whole(4), 4);
  o.require(ub == 2, "degree bound " + std::to_string(ub));
  std::size_t agree = 0;
  const auto sets = sampled_sets(4, 4, 100, kDefaultSeed);
  for (const auto& S : sets) agree += max_tree_packing(RegionSpec::whole(4), S).value == 2;
  o.require(agree == sets.size(), "oracle agreed on " + std::to_string(agree) + "/100");
  const double s = since(t0);
  o.require(s < 300.0, "runtime " + std::to_string(s) + "s");
  char buf[200];
  std::snprintf(buf, sizeof buf, "10626/10626 two-tree packings, degree bound 2, oracle kappa=2 on %zu/100 sampled, %.1fs",
                agree, s);
  if (o.pass) o.detail = buf;
  return o;
}

Outcome ac3() {
  Outcome o;
  const auto t0 = Clock::now();
  std::string summary;
  for (const auto& [n, count] : std::vector<std::pair<int, std::size_t>>{{5, 10000}, {6, 1000}, {7, 100}}) {
    const auto rep = survey(n, SurveyMode::sample, count);
    o.require(rep.passed == count && rep.failed == 0,
              "n=" + std::to_string(n) + " " + std::to_string(rep.passed) + "/" + std::to_string(count));
    o.require(rep.sizes.size() == 1 && rep.sizes.begin()->first == static_cast<std::size_t>(n - 2),
              "n=" + std::to_string(n) + " packing size");
    SurveyOptions opt;
    opt.n = n;
    opt.mode = SurveyMode::sample;
    opt.count = std::min<std::size_t>(count, 1000);
    o.require(reference_checked(opt), "n=" + std::to_string(n) + " reference checker");
    summary += (summary.empty() ? "" : ", ") + std::string("n=") + std::to_string(n) + " " +
               std::to_string(rep.passed) + "/" + std::to_string(count);
  }
  const double s = since(t0);
  o.require(s < 900.0, "runtime " + std::to_string(s) + "s");
  char buf[64];
  std::snprintf(buf, sizeof buf, ", %.1fs", s);
  if (o.pass) o.detail = summary + " (seed 42)" + buf;
  return o;
}

Outcome ac4() {
  Outcome o;
  for (int n : {3, 4}) {
    const RegionGraph g(RegionSpec::whole(n));
    int lo = 99;
    for (int a = 0; a < g.size(); ++a)
      for (int b = a + 1; b < g.size(); ++b) lo = std::min(lo, local_connectivity(g, a, b, n + 2));
    o.require(lo == n - 1, "all-pairs kappa(B" + std::to_string(n) + ")=" + std::to_string(lo));
    o.require(region_connectivity(RegionSpec::whole(n)) == n - 1, "region_connectivity(B" + std::to_string(n) + ")");
    o.require(naive::vertex_connectivity(naive::Graph(naive::all_perms(n))) == n - 1,
              "deletion search on B" + std::to_string(n));
  }
  std::mt19937_64 rng(kDefaultSeed);
  const BubbleGraph g5(5);
  std::size_t ok = 0;
  for (int t = 0; t < 500; ++t) {
    const auto ab = distinct_below(rng, factorial(5), 2);
    const auto u = unrank(ab[0], 5);
    const auto v = unrank(ab[1], 5);
    try {
      const auto ps = st_internally_disjoint_paths(RegionSpec::whole(5), u, v, 4);
      ok += ps.paths.size() == 4 && verify_paths(g5, RegionSpec::whole(5), ps).ok;
    } catch (const PathsInfeasible&) {
    }
  }
  o.require(ok == 500, "n=5 pairs with 4 paths: " + std::to_string(ok) + "/500");
  if (o.pass) o.detail = "kappa(B3)=2, kappa(B4)=3 over all pairs; 500/500 sampled B5 pairs admit 4 paths";
  return o;
}

Outcome ac5() {
  Outcome o;
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j) {
      const auto r = RegionSpec::parts(4, {i, j});
      const int k = region_connectivity(r);
      o.require(k == 2, "kappa(B4[V" + std::to_string(i) + "+V" + std::to_string(j) + "])=" + std::to_string(k));
      o.require(naive::vertex_connectivity(naive::Graph(region_members(r))) == 2, "deletion search disagrees");
    }
  std::mt19937_64 rng(kDefaultSeed);
  const BubbleGraph g(5);
  std::set<std::vector<int>> unions;
  while (unions.size() < 5) {
    std::vector<int> I;
    for (int s = 1; s <= 5; ++s)
      if (rng() % 2) I.push_back(s);
    if (I.size() >= 2 && I.size() <= 4) unions.insert(I);
  }
  std::size_t pairs = 0;
  for (const auto& I : unions) {
    const auto r = RegionSpec::parts(5, I);
    const auto vs = region_members(r);
    int min_deg = 99;
    for (const auto& v : vs) min_deg = std::min(min_deg, static_cast<int>(region_neighbors(r, v).size()));
    o.require(min_deg == 3, r.to_string() + " least induced degree " + std::to_string(min_deg));
    for (int t = 0; t < 100; ++t) {
      const auto ab = distinct_below(rng, vs.size(), 2);
      try {
        const auto ps = st_internally_disjoint_paths(r, vs[ab[0]], vs[ab[1]], 3);
        if (ps.paths.size() == 3 && verify_paths(g, r, ps).ok) ++pairs;
      } catch (const PathsInfeasible&) {
        o.require(false, r.to_string() + " pair without 3 paths");
      }
    }
  }
  o.require(pairs == 500, "pairs with 3 paths " + std::to_string(pairs) + "/500");
  if (o.pass) o.detail = "kappa=2 for all 6 part pairs of B4; 5 part unions of B5: 500/500 pairs admit 3 paths, least degree 3";
  return o;
}

Outcome ac6() {
  Outcome o;
  std::string summary;
  for (int n : {3, 4}) {
    const auto vs = naive::all_perms(n);
    std::size_t sets = 0;
    std::size_t clean = 0;
    naive::any_subset(static_cast<int>(vs.size()), 3, [&](const std::vector<int>& idx) {
      std::vector<Permutation> S;
      for (int i : idx) S.push_back(vs[static_cast<std::size_t>(i)]);
      ++sets;
      const auto p = steiner_packing_k3(RegionSpec::whole(n), S, n - 2);
      clean += p.trees.size() == static_cast<std::size_t>(n - 2) && verify_packing(BubbleGraph(n), S, p).ok &&
               naive::packing_ok(S, p);
      return false;
    });
    o.require(clean == sets, "B" + std::to_string(n) + " " + std::to_string(clean) + "/" + std::to_string(sets));
    summary += "B" + std::to_string(n) + " " + std::to_string(clean) + "/" + std::to_string(sets) + ", ";
  }
  std::size_t clean = 0;
  for (const auto& S : sampled_sets(5, 3, 1000, kDefaultSeed)) {
    const auto p = steiner_packing_k3(RegionSpec::whole(5), S, 3);
    clean += p.trees.size() == 3 && verify_packing(BubbleGraph(5), S, p).ok && naive::packing_ok(S, p);
  }
  o.require(clean == 1000, "B5 " + std::to_string(clean) + "/1000");
  if (o.pass) o.detail = summary + "B5 " + std::to_string(clean) + "/1000 sampled";
  return o;
}

Outcome ac7() {
  Outcome o;
  for (int n = 2; n <= 7; ++n) {
    const auto st = graph_stats(n, 20, kDefaultSeed);
    const std::string tag = "n=" + std::to_string(n) + " ";
    o.require(st.vertices == factorial(n), tag + "|V|");
    o.require(st.min_degree == n - 1 && st.max_degree == n - 1, tag + "degree");
    o.require(st.bipartite, tag + "bipartite");
    if (n >= 3) {
      o.require(st.out_involution && st.out_injective, tag + "out-neighbour");
      o.require(st.cross.size() == static_cast<std::size_t>(n * (n - 1)), tag + "part pairs");
      for (const auto& c : st.cross) o.require(c.edges == factorial(n - 2), tag + "cross-edge count");
    }
    // Reference: parity colouring and a direct out-neighbour count.
    const auto vs = naive::all_perms(n);
    const BubbleGraph g(n);
    std::set<Permutation> outs;
    for (const auto& u : vs) {
      for (const auto& v : g.neighbors(u))
        o.require(naive::adjacent(u, v) && naive::inversions(u) % 2 != naive::inversions(v) % 2, tag + "edge parity");
      if (n >= 3) {
        auto w = naive::seq(u);
        std::swap(w[static_cast<std::size_t>(n - 2)], w[static_cast<std::size_t>(n - 1)]);
        o.require(g.out_neighbor(u) == naive::make(w), tag + "out-neighbour formula");
        outs.insert(g.out_neighbor(u));
      }
    }
    if (n >= 3) o.require(outs.size() == vs.size(), tag + "out-neighbour injective");
  }
  if (o.pass) o.detail = "n=2..7: n! vertices, (n-1)-regular, bipartite, out-neighbour involutive and injective, (n-2)! cross edges per ordered pair";
  return o;
}

Outcome ac8() {
  Outcome o;
  // Mutation: 1000 single-edit corruptions at n = 4.
  std::mt19937_64 rng(kDefaultSeed);
  const BubbleGraph g4(4);
  int corrupt = 0;
  int caught = 0;
  int agree = 0;
  int edits = 0;
  while (corrupt < 1000) {
    std::vector<Permutation> S;
    for (auto r : distinct_below(rng, 24, 4)) S.push_back(unrank(r, 4));
    const auto p = build_trees(4, S);
    const auto m = mutation::mutate(rng, p, S);
    const bool reference = naive::packing_ok(S, m);
    const bool ours = verify_packing(g4, S, m).ok;
    ++edits;
    agree += reference == ours;
    if (!reference) {
      ++corrupt;
      caught += !ours;
    }
  }
  o.require(caught == 1000, "mutations caught " + std::to_string(caught) + "/1000");
  o.require(agree == edits, "verifier disagreed with reference on " + std::to_string(edits - agree) + " edits");

  // Duality: every path-engine failure carries a separating cut.
  int failures = 0;
  int separated = 0;
  const std::vector<RegionSpec> regions{RegionSpec::parts(5, {1}), RegionSpec::parts(5, {2, 3}),
                                        RegionSpec::suffix(5, {3, 1}), RegionSpec::parts(4, {1, 4}),
                                        RegionSpec::whole(4), RegionSpec::suffix(6, {2, 1})};
  for (int t = 0; t < 600; ++t) {
    const auto& r = regions[rng() % regions.size()];
    const auto vs = region_members(r);
    const auto ab = distinct_below(rng, vs.size(), 2);
    const auto& u = vs[ab[0]];
    const auto& v = vs[ab[1]];
    const std::size_t k = 2 + rng() % 5;
    try {
      st_internally_disjoint_paths(r, u, v, k);
    } catch (const PathsInfeasible& e) {
      ++failures;
      separated += e.cut().size() < k &&
                   !naive::reaches(r, e.cut(), {u}, {v}, e.direct_edge() ? &u : nullptr, e.direct_edge() ? &v : nullptr);
    }
    std::vector<Permutation> X;
    std::vector<Permutation> Y;
    for (auto i : distinct_below(rng, vs.size(), k)) X.push_back(vs[i]);
    for (auto i : distinct_below(rng, vs.size(), k)) Y.push_back(vs[i]);
    try {
      disjoint_set_paths(r, {TerminalRole::X, X}, {TerminalRole::Y, Y}, k);
    } catch (const PathsInfeasible& e) {
      ++failures;
      separated += e.cut().size() < k && !naive::reaches(r, e.cut(), X, Y);
    }
    const auto& src = vs[rng() % vs.size()];
    std::vector<Permutation> F;
    for (const auto& y : Y)
      if (y != src) F.push_back(y);
    try {
      fan_paths(r, src, {TerminalRole::Y, F}, F.size());
    } catch (const PathsInfeasible& e) {
      ++failures;
      // The cut may contain targets; no uncut target may stay reachable.
      std::vector<Permutation> rest;
      for (const auto& y : F)
        if (std::find(e.cut().begin(), e.cut().end(), y) == e.cut().end()) rest.push_back(y);
      separated += e.cut().size() < e.requested() && !naive::reaches(r, e.cut(), {src}, rest);
    }
  }
  o.require(failures > 100 && separated == failures,
            "cuts separating " + std::to_string(separated) + "/" + std::to_string(failures));

  // Determinism: identical S lists and byte-identical certificates.
  SurveyOptions opt;
  opt.n = 6;
  opt.mode = SurveyMode::sample;
  opt.count = 100;
  const auto a = survey_population(opt);
  const auto b = survey_population(opt);
  bool same = a == b;
  for (const auto& S : a)
    same = same && to_json(make_certificate(build_trees_traced(6, S))) == to_json(make_certificate(build_trees_traced(6, S)));
  o.require(same, "certificates differ across runs");
  if (o.pass) {
    o.detail = std::to_string(caught) + "/1000 corruptions rejected (" + std::to_string(edits) +
               " edits, verifier matches reference on all); " + std::to_string(separated) + "/" + std::to_string(failures) +
               " engine failures with separating cuts; 100 certificates byte-identical";
  }
  return o;
}

Outcome ac9() {
  Outcome o;
  std::string summary;
  for (const auto& rep : g_reports) {
    std::size_t total = 0;
    std::size_t fb = 0;
    for (const auto& [k, t] : rep.subcases) {
      total += t.total;
      fb += t.fallback;
    }
    o.require(total == rep.instances, "n=" + std::to_string(rep.n) + " subcase totals");
    o.require(fb == rep.fallback_instances, "n=" + std::to_string(rep.n) + " fallback totals");
    o.require(rep.failed == 0, "n=" + std::to_string(rep.n) + " has failures");
    char buf[96];
    std::snprintf(buf, sizeof buf, "%sn=%d fallback %.1f%%", summary.empty() ? "" : ", ", rep.n,
                  rep.instances ? 100.0 * static_cast<double>(fb) / static_cast<double>(rep.instances) : 0.0);
    summary += buf;
  }
  o.require(!g_reports.empty(), "no survey ran");
  if (o.pass) o.detail = summary + "; no instance below n-2 trees";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
      {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}};
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s %s  %s\n", name.c_str(), o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("\nfallback usage per subcase (informational):\n");
  for (const auto& rep : g_reports) {
    std::printf("-- survey n=%d --\n%s", rep.n, rep.to_text().c_str());
  }
  return failed ? 1 : 0;
}
