#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "bubblepack/bubble_graph.hpp"
#include "bubblepack/certificate.hpp"
#include "bubblepack/errors.hpp"
#include "bubblepack/oracle.hpp"
#include "bubblepack/stats.hpp"
#include "bubblepack/survey.hpp"
#include "bubblepack/tree_builder.hpp"
#include "bubblepack/verifier.hpp"

using namespace bubblepack;

namespace {

constexpr int kOk = 0;
constexpr int kSemantic = 1;
constexpr int kInput = 2;

// Bad user input: exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Args {
  int n = 0;
  std::vector<std::string> s;
  std::string mode = "all";
  std::size_t count = 1000;
  std::uint64_t seed = kDefaultSeed;
  unsigned jobs = 0;
  std::string out;
  std::string region;
  std::string cert;
  std::string format = "text";
};

std::vector<Permutation> parse_set(const Args& a) {
  if (a.s.empty()) throw InputError("no terminals given (use --s four times)");
  std::vector<Permutation> S;
  for (const auto& t : a.s) {
    Permutation p;
    try {
      p = parse_permutation(t);
    } catch (const std::invalid_argument& e) {
      throw InputError("bad permutation \"" + t + "\": " + e.what());
    }
    if (p.arity() != a.n) throw InputError("\"" + t + "\" is not a permutation of [" + std::to_string(a.n) + "]");
    for (const auto& q : S)
      if (q == p) throw InputError("terminal " + to_string(p) + " given twice");
    S.push_back(p);
  }
  return S;
}

RegionSpec parse_region(const Args& a) {
  if (a.region.empty()) return RegionSpec::whole(a.n);
  try {
    return RegionSpec::parse(a.n, a.region);
  } catch (const std::invalid_argument& e) {
    throw InputError("bad region \"" + a.region + "\": " + e.what());
  }
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string report_json(const VerifyReport& rep, bool digest_ok) {
  nlohmann::json j;
  j["ok"] = rep.ok && digest_ok;
  j["digest_ok"] = digest_ok;
  j["sizes"] = rep.stats.sizes;
  j["vertices_touched"] = rep.stats.vertices_touched;
  j["violations"] = nlohmann::json::array();
  for (const auto& v : rep.violations) {
    nlohmann::json w = nlohmann::json::array();
    for (const auto& p : v.witness) w.push_back(to_string(p));
    j["violations"].push_back(
        {{"kind", to_string(v.kind)}, {"item", v.item}, {"other", v.other}, {"witness", w}, {"detail", v.detail}});
  }
  return j.dump(2) + "\n";
}

int cmd_connect(const Args& a) {
  if (a.n < 3) throw InputError("connect needs n >= 3");
  if (a.n > kBuildMaxArity) throw InputError("connect supports n <= " + std::to_string(kBuildMaxArity));
  const auto S = parse_set(a);
  if (S.size() != 4) throw InputError("connect needs exactly four terminals");
  const BuildTrace trace = build_trees_traced(a.n, S);
  const CertificateDocument doc = make_certificate(trace);
  const VerifyReport rep = verify_packing(BubbleGraph(a.n), S, trace.packing);
  emit(to_json(doc), a.out);
  const bool full = trace.packing.trees.size() == static_cast<std::size_t>(a.n - 2);
  std::cerr << "case " << (doc.subcase.empty() ? std::to_string(doc.case_id) : doc.subcase) << ", "
            << doc.trees.size() << " trees" << (trace.packing.any_fallback() ? " (fallback used)" : "") << ", "
            << rep.to_text();
  return rep.ok && full ? kOk : kSemantic;
}

int cmd_verify(const Args& a) {
  if (a.cert.empty()) throw InputError("verify needs --cert");
  const CertificateDocument doc = parse_certificate(slurp(a.cert));
  VerifyReport rep = verify_packing(BubbleGraph(doc.n), doc.S, to_packing(doc));
  if (doc.trees.size() != static_cast<std::size_t>(doc.n - 2)) {
    rep.add({ViolationKind::contract_breach, -1, -1, {},
             std::to_string(doc.trees.size()) + " trees, expected " + std::to_string(doc.n - 2)});
  }
  const bool digest_ok = digest_matches(doc);
  if (a.format == "json") {
    std::cout << report_json(rep, digest_ok);
  } else {
    std::cout << rep.to_text();
    std::cout << "digest: " << (digest_ok ? "ok" : "MISMATCH (expected " + compute_digest(doc) + ")") << "\n";
  }
  return rep.ok && digest_ok ? kOk : kSemantic;
}

int cmd_survey(const Args& a) {
  SurveyOptions opt;
  opt.n = a.n;
  if (a.mode == "all") {
    opt.mode = SurveyMode::all;
  } else if (a.mode == "sample") {
    opt.mode = SurveyMode::sample;
  } else {
    throw InputError("mode must be all or sample");
  }
  if (a.n < 3 || a.n > kBuildMaxArity) throw InputError("survey needs 3 <= n <= " + std::to_string(kBuildMaxArity));
  opt.count = a.count;
  opt.seed = a.seed;
  opt.jobs = a.jobs ? a.jobs : std::max(1u, std::thread::hardware_concurrency());
  const SurveyReport rep = run_survey(opt);
  std::cout << rep.to_text();
  return rep.ok() ? kOk : kSemantic;
}

int cmd_oracle(const Args& a) {
  if (a.n < 2) throw InputError("oracle needs --n");
  const RegionSpec r = parse_region(a);
  const auto S = parse_set(a);
  const OracleResult res = max_tree_packing(r, S);
  const VerifyReport rep = verify_packing(BubbleGraph(a.n), S, res.witness);
  std::cout << "kappa(S) = " << res.value << " in " << r.to_string() << " (upper bound by "
            << to_string(res.upper_bound_source) << ", " << res.connectors << " connectors, " << res.nodes
            << " nodes)\n";
  for (std::size_t i = 0; i < res.witness.trees.size(); ++i) {
    std::cout << "T" << i << ":";
    for (const auto& e : res.witness.trees[i].edges) std::cout << " " << to_string(e.a) << "-" << to_string(e.b);
    std::cout << "\n";
  }
  std::cout << "witness " << rep.to_text();
  return rep.ok ? kOk : kSemantic;
}

int cmd_stats(const Args& a) {
  if (a.n < 2) throw InputError("stats needs --n");
  std::cout << graph_stats(a.n, 200, a.seed).to_text();
  return kOk;
}

int cmd_export_dot(const Args& in) {
  Args a = in;
  TreePacking overlay;
  const bool has_overlay = !a.cert.empty();
  if (has_overlay) {
    const CertificateDocument doc = parse_certificate(slurp(a.cert));
    if (a.n && a.n != doc.n) throw InputError("--n differs from the certificate");
    a.n = doc.n;
    overlay = to_packing(doc);
  }
  if (a.n < 2) throw InputError("export-dot needs --n or --cert");
  emit(export_dot(parse_region(a), has_overlay ? &overlay : nullptr), a.out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Internally disjoint trees for 4-sets in bubble-sort graphs"};
  app.require_subcommand(1);
  Args a;
  const auto with_n = [&](CLI::App* c, bool required) {
    auto* o = c->add_option("--n", a.n, "arity of B_n");
    if (required) o->required();
  };
  const auto with_s = [&](CLI::App* c) {
    c->add_option("--s", a.s, "terminal in one-line notation, e.g. (2,1,3,4); repeat for each")->required();
  };

  auto* connect = app.add_subcommand("connect", "build and certify n-2 trees for a 4-set");
  with_n(connect, true);
  with_s(connect);
  connect->add_option("--out", a.out, "certificate path (default stdout)");

  auto* verify = app.add_subcommand("verify", "re-verify a certificate");
  verify->add_option("--cert", a.cert, "certificate path")->required();
  verify->add_option("--format", a.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* survey = app.add_subcommand("survey", "build and verify over all or sampled 4-sets");
  with_n(survey, true);
  survey->add_option("--mode", a.mode, "all or sample")->check(CLI::IsMember({"all", "sample"}));
  survey->add_option("--count", a.count, "sample size");
  survey->add_option("--seed", a.seed, "mt19937_64 seed");
  survey->add_option("--jobs", a.jobs, "worker threads (default: hardware)");

  auto* oracle = app.add_subcommand("oracle", "exact kappa(S) by exhaustive search");
  with_n(oracle, true);
  with_s(oracle);
  oracle->add_option("--region", a.region, "region, e.g. parts(1,2) or suffix(2,1)");

  auto* stats = app.add_subcommand("stats", "structural statistics of B_n");
  with_n(stats, true);
  stats->add_option("--seed", a.seed, "seed for sampled connectivity");

  auto* dot = app.add_subcommand("export-dot", "Graphviz rendering of a region");
  with_n(dot, false);
  dot->add_option("--region", a.region, "region (default whole)");
  dot->add_option("--cert", a.cert, "certificate to overlay");
  dot->add_option("--out", a.out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (*connect) return cmd_connect(a);
    if (*verify) return cmd_verify(a);
    if (*survey) return cmd_survey(a);
    if (*oracle) return cmd_oracle(a);
    if (*stats) return cmd_stats(a);
    if (*dot) return cmd_export_dot(a);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const CertificateError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const GuardExceeded& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kSemantic;
  } catch (const ConstructionFailure& e) {
    std::cerr << "construction failed: " << e.what() << "\n";
    return kSemantic;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSemantic;
  }
  return kInput;
}
