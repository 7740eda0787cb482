#include <gtest/gtest.h>

#include <random>

#include "bubblepack/certificate.hpp"
#include "bubblepack/stats.hpp"
#include "bubblepack/survey.hpp"
#include "bubblepack/verifier.hpp"
#include "naive.hpp"

using namespace bubblepack;

namespace {

const std::vector<Permutation> kS6{{1, 2, 3, 4, 5, 6}, {2, 1, 3, 4, 6, 5}, {6, 5, 4, 3, 2, 1}, {3, 1, 4, 2, 6, 5}};

std::string replace_once(std::string s, const std::string& from, const std::string& to, const std::string& after = "") {
  const auto at = s.find(from, after.empty() ? 0 : s.find(after));
  if (at != std::string::npos) s.replace(at, from.size(), to);
  return s;
}

}  // namespace

TEST(Certificate, RoundTripLossless) {
  const auto doc = make_certificate(build_trees_traced(6, kS6));
  EXPECT_EQ(doc.schema, "1");
  EXPECT_EQ(doc.trees.size(), 4u);
  const auto text = to_json(doc);
  const auto back = parse_certificate(text);
  EXPECT_EQ(back.n, doc.n);
  EXPECT_EQ(back.S, doc.S);
  EXPECT_EQ(back.case_id, doc.case_id);
  EXPECT_EQ(back.subcase, doc.subcase);
  EXPECT_EQ(back.case_trail, doc.case_trail);
  ASSERT_EQ(back.trees.size(), doc.trees.size());
  for (std::size_t i = 0; i < doc.trees.size(); ++i) {
    EXPECT_EQ(back.trees[i].edges, doc.trees[i].edges);
    EXPECT_EQ(back.trees[i].fallback, doc.trees[i].fallback);
    EXPECT_EQ(back.trees[i].provenance, doc.trees[i].provenance);
  }
  EXPECT_EQ(to_json(back), text);
  EXPECT_TRUE(digest_matches(back));
  EXPECT_TRUE(verify_packing(BubbleGraph(6), back.S, to_packing(back)).ok);
  EXPECT_TRUE(naive::packing_ok(back.S, to_packing(back)));
}

TEST(Certificate, ByteIdenticalAcrossRuns) {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 40; ++t) {
    const int n = 4 + t % 3;
    std::vector<Permutation> S;
    while (S.size() < 4) {
      const auto p = unrank(rng() % factorial(n), n);
      if (std::find(S.begin(), S.end(), p) == S.end()) S.push_back(p);
    }
    EXPECT_EQ(to_json(make_certificate(build_trees_traced(n, S))), to_json(make_certificate(build_trees_traced(n, S))));
  }
}

TEST(Certificate, DigestIsSha256OfCanonicalText) {
  CertificateDocument doc;
  doc.n = 3;
  doc.S = {{1, 2, 3}};
  EXPECT_EQ(digest_input(doc), "n 3\nS (1,2,3)\n");
  // Reference value from an independent SHA-256 implementation.
  EXPECT_EQ(compute_digest(doc), "0765f3664a542b5ef6d83b1906345a7251f247ac3dfe5626074dd671d8cd7dbb");
  doc.trees.push_back({{Edge({2, 1, 3}, {1, 2, 3})}, false, {}});
  EXPECT_EQ(digest_input(doc), "n 3\nS (1,2,3)\nT0 (1,2,3)-(2,1,3)\n");
}

TEST(Certificate, TamperedEdgeBreaksDigestAndVerification) {
  const auto doc = make_certificate(build_trees_traced(6, kS6));
  const auto& e = doc.trees[0].edges[0];
  const std::string from = "\"" + to_string(e.b) + "\"";
  const std::string text = replace_once(to_json(doc), from, "\"(6,5,4,3,1,2)\"", "\"trees\"");
  const auto bad = parse_certificate(text);
  EXPECT_FALSE(digest_matches(bad));
  EXPECT_FALSE(verify_packing(BubbleGraph(6), bad.S, to_packing(bad)).ok);
}

TEST(Certificate, SchemaAndParseErrors) {
  const auto text = to_json(make_certificate(build_trees_traced(4, {{1, 2, 3, 4}, {2, 1, 3, 4}, {4, 3, 2, 1}, {3, 1, 4, 2}})));
  EXPECT_THROW(parse_certificate(replace_once(text, "\"schema\": \"1\"", "\"schema\": \"2\"")), CertificateError);
  EXPECT_THROW(parse_certificate(replace_once(text, "\"schema\": \"1\"", "\"schema\": 1")), CertificateError);
  EXPECT_THROW(parse_certificate("not json"), CertificateError);
  EXPECT_THROW(parse_certificate("{\"schema\": \"1\"}"), CertificateError);
  EXPECT_THROW(parse_certificate(replace_once(text, "(1,2,3,4)", "(1,1,3,4)")), CertificateError);
}

TEST(Survey, PopulationDeterministicAndSorted) {
  SurveyOptions opt;
  opt.n = 5;
  opt.mode = SurveyMode::sample;
  opt.count = 300;
  const auto a = survey_population(opt);
  const auto b = survey_population(opt);
  EXPECT_EQ(a, b);
  EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
  for (const auto& S : a) {
    EXPECT_EQ(S.size(), 4u);
    EXPECT_TRUE(std::is_sorted(S.begin(), S.end()));
    EXPECT_EQ(std::adjacent_find(S.begin(), S.end()), S.end());
  }
  opt.seed = 43;
  EXPECT_NE(survey_population(opt), a);
  SurveyOptions all;
  all.n = 3;
  EXPECT_EQ(survey_population(all).size(), 15u);
  all.n = 5;
  EXPECT_ANY_THROW(survey_population(all));
}

TEST(Survey, ReportIndependentOfWorkerCount) {
  SurveyOptions opt;
  opt.n = 5;
  opt.mode = SurveyMode::sample;
  opt.count = 200;
  opt.jobs = 1;
  const auto a = run_survey(opt);
  opt.jobs = 4;
  const auto b = run_survey(opt);
  EXPECT_TRUE(a.ok());
  EXPECT_EQ(a.passed, 200u);
  EXPECT_EQ(a.sizes, b.sizes);
  EXPECT_EQ(a.cases, b.cases);
  EXPECT_EQ(a.fallback_instances, b.fallback_instances);
  ASSERT_EQ(a.subcases.size(), b.subcases.size());
  for (const auto& [k, t] : a.subcases) {
    EXPECT_EQ(t.total, b.subcases.at(k).total);
    EXPECT_EQ(t.fallback, b.subcases.at(k).fallback);
  }
}

TEST(Stats, SmallGraphs) {
  const auto s4 = graph_stats(4);
  EXPECT_EQ(s4.vertices, 24u);
  EXPECT_EQ(s4.min_degree, 3);
  EXPECT_TRUE(s4.regular());
  EXPECT_TRUE(s4.bipartite);
  EXPECT_TRUE(s4.out_involution);
  EXPECT_TRUE(s4.out_injective);
  EXPECT_EQ(s4.cross.size(), 12u);
  for (const auto& c : s4.cross) EXPECT_EQ(c.edges, 2u);
  EXPECT_TRUE(s4.connectivity_exact);
  EXPECT_EQ(s4.connectivity, 3);
  const auto s5 = graph_stats(5, 50);
  EXPECT_EQ(s5.vertices, 120u);
  for (const auto& c : s5.cross) EXPECT_EQ(c.edges, 6u);
  EXPECT_FALSE(s5.connectivity_exact);
  EXPECT_EQ(s5.connectivity, 4);
  EXPECT_ANY_THROW(graph_stats(9));
}
