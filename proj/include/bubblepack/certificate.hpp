#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bubblepack/packing.hpp"
#include "bubblepack/tree_builder.hpp"

namespace bubblepack {

inline constexpr std::string_view kCertificateSchema = "1";

// Unreadable document or unsupported schema version.
class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CertificateTree {
  std::vector<Edge> edges;  // sorted
  bool fallback = false;
  std::vector<std::string> provenance;
};

struct CertificateDocument {
  std::string schema{kCertificateSchema};
  int n = 0;
  std::vector<Permutation> S;
  int case_id = 0;
  std::string subcase;
  std::vector<std::string> case_trail;
  std::vector<CertificateTree> trees;
  // SHA-256 (hex) of n, S and the tree edge lists; see digest_input.
  std::string digest;
};

CertificateDocument make_certificate(const BuildTrace& trace);

// Canonical text the digest is taken over: one line per field, edges sorted.
std::string digest_input(const CertificateDocument& doc);
std::string compute_digest(const CertificateDocument& doc);
inline bool digest_matches(const CertificateDocument& doc) { return doc.digest == compute_digest(doc); }

// Deterministic pretty-printed JSON.
std::string to_json(const CertificateDocument& doc);
// Throws CertificateError.
CertificateDocument parse_certificate(std::string_view text);

TreePacking to_packing(const CertificateDocument& doc);

}  // namespace bubblepack
