#include "bubblepack/packing.hpp"

#include <algorithm>

namespace bubblepack {

std::vector<Permutation> TreeCertificate::vertices() const {
  std::vector<Permutation> out;
  out.reserve(edges.size() * 2 + terminals.size());
  for (const auto& e : edges) {
    out.push_back(e.a);
    out.push_back(e.b);
  }
  if (edges.empty()) out.insert(out.end(), terminals.begin(), terminals.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool TreePacking::any_fallback() const {
  return std::find(fallback_used.begin(), fallback_used.end(), true) != fallback_used.end();
}

}  // namespace bubblepack
