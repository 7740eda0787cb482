#include "bubblepack/certificate.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <json.hpp>

namespace bubblepack {

namespace {

using json = nlohmann::ordered_json;

std::string sha256_hex(const std::string& data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::string hex;
  hex.reserve(2 * len);
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

Permutation parse_vertex(const json& j, int n, const char* what) {
  if (!j.is_string()) throw CertificateError(std::string(what) + ": expected a permutation string");
  Permutation p;
  try {
    p = parse_permutation(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw CertificateError(std::string(what) + ": " + e.what());
  }
  if (p.arity() != n) throw CertificateError(std::string(what) + ": arity differs from n");
  return p;
}

const json& field(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw CertificateError(std::string("missing field '") + key + "'");
  return *it;
}

}  // namespace

CertificateDocument make_certificate(const BuildTrace& trace) {
  const TreePacking& p = trace.packing;
  CertificateDocument doc;
  doc.n = p.n;
  doc.S = trace.plan.S.empty() ? p.terminals : trace.plan.S;
  doc.case_id = trace.plan.case_id;
  doc.subcase = trace.plan.subcase;
  doc.case_trail = p.case_trail;
  for (std::size_t i = 0; i < p.trees.size(); ++i) {
    CertificateTree t;
    t.edges = p.trees[i].edges;
    std::sort(t.edges.begin(), t.edges.end());
    t.fallback = i < p.fallback_used.size() && p.fallback_used[i];
    t.provenance = p.trees[i].provenance;
    doc.trees.push_back(std::move(t));
  }
  doc.digest = compute_digest(doc);
  return doc;
}

std::string digest_input(const CertificateDocument& doc) {
  std::string s = "n " + std::to_string(doc.n) + "\nS";
  for (const auto& v : doc.S) s += " " + to_string(v);
  s += "\n";
  for (std::size_t i = 0; i < doc.trees.size(); ++i) {
    auto edges = doc.trees[i].edges;
    std::sort(edges.begin(), edges.end());
    s += "T" + std::to_string(i);
    for (const auto& e : edges) s += " " + to_string(e.a) + "-" + to_string(e.b);
    s += "\n";
  }
  return s;
}

std::string compute_digest(const CertificateDocument& doc) { return sha256_hex(digest_input(doc)); }

std::string to_json(const CertificateDocument& doc) {
  json j = json::object();
  j["schema"] = doc.schema;
  j["n"] = doc.n;
  json s = json::array();
  for (const auto& v : doc.S) s.push_back(to_string(v));
  j["S"] = s;
  j["case"] = {{"id", doc.case_id}, {"subcase", doc.subcase}};
  j["case_trail"] = doc.case_trail;
  json trees = json::array();
  for (const auto& t : doc.trees) {
    json edges = json::array();
    for (const auto& e : t.edges) edges.push_back({to_string(e.a), to_string(e.b)});
    trees.push_back({{"edges", edges}, {"fallback", t.fallback}, {"provenance", t.provenance}});
  }
  j["trees"] = trees;
  j["digest"] = doc.digest;
  return j.dump(2) + "\n";
}

CertificateDocument parse_certificate(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw CertificateError(std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw CertificateError("certificate must be a JSON object");
  const json& schema = field(j, "schema");
  if (!schema.is_string() || schema.get<std::string>() != kCertificateSchema) {
    throw CertificateError("unsupported schema version " + schema.dump() + ", expected \"" +
                           std::string(kCertificateSchema) + "\"");
  }
  CertificateDocument doc;
  try {
    doc.n = field(j, "n").get<int>();
    if (doc.n < 2 || doc.n > kMaxArity) throw CertificateError("n out of range");
    for (const auto& v : field(j, "S")) doc.S.push_back(parse_vertex(v, doc.n, "S"));
    const json& c = field(j, "case");
    doc.case_id = field(c, "id").get<int>();
    doc.subcase = field(c, "subcase").get<std::string>();
    doc.case_trail = field(j, "case_trail").get<std::vector<std::string>>();
    for (const auto& t : field(j, "trees")) {
      CertificateTree tree;
      for (const auto& e : field(t, "edges")) {
        if (!e.is_array() || e.size() != 2) throw CertificateError("edge must be a pair");
        tree.edges.emplace_back(parse_vertex(e[0], doc.n, "edge"), parse_vertex(e[1], doc.n, "edge"));
      }
      tree.fallback = field(t, "fallback").get<bool>();
      tree.provenance = field(t, "provenance").get<std::vector<std::string>>();
      doc.trees.push_back(std::move(tree));
    }
    doc.digest = field(j, "digest").get<std::string>();
  } catch (const json::exception& e) {
    throw CertificateError(std::string("malformed field: ") + e.what());
  }
  return doc;
}

TreePacking to_packing(const CertificateDocument& doc) {
  TreePacking p;
  p.n = doc.n;
  p.terminals = doc.S;
  p.case_trail = doc.case_trail;
  for (const auto& t : doc.trees) {
    TreeCertificate c;
    c.edges = t.edges;
    c.terminals = doc.S;
    c.provenance = t.provenance;
    p.trees.push_back(std::move(c));
    p.fallback_used.push_back(t.fallback);
  }
  return p;
}

}  // namespace bubblepack
