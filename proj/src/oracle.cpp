#include "bubblepack/oracle.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <random>
#include <stdexcept>

#include "bubblepack/errors.hpp"
#include "bubblepack/sampling.hpp"
#include "bubblepack/tree_builder.hpp"
#include "bubblepack/verifier.hpp"

namespace bubblepack {

std::string to_string(UpperBoundSource s) {
  return s == UpperBoundSource::degree_lemma ? "degree-lemma" : "exhaustion";
}

namespace {

using Mask = std::uint64_t;

Mask bit(int v) { return Mask{1} << v; }

struct Connector {
  Mask interior;
  std::uint32_t tt;  // terminal-terminal edges the tree may use
  int key;           // least neighbour slot of the root terminal
};

class PackingSearch {
 public:
  PackingSearch(const RegionGraph& g, std::vector<int> terminals, std::stop_token stop)
      : g_(g), terms_(std::move(terminals)), stop_(stop) {
    const int n = g_.size();
    adj_.assign(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
      for (int w : g_.neighbors(v)) adj_[static_cast<std::size_t>(v)] |= bit(w);
    }
    for (int t : terms_) term_mask_ |= bit(t);
    for (std::size_t a = 0; a < terms_.size(); ++a) {
      for (std::size_t b = a + 1; b < terms_.size(); ++b) {
        if (adj_[static_cast<std::size_t>(terms_[a])] & bit(terms_[b])) {
          tt_.push_back({terms_[a], terms_[b]});
        }
      }
    }
  }

  int degree(int v) const { return std::popcount(adj_[static_cast<std::size_t>(v)]); }

  // True when m trees exist; fills `chosen`.
  bool pack(int m) {
    m_ = m;
    cands_.clear();
    const std::uint32_t subsets = 1u << tt_.size();
    for (std::uint32_t A = 0; A < subsets; ++A) enumerate(A);
    connectors_ += cands_.size();
    std::stable_sort(cands_.begin(), cands_.end(),
                     [](const Connector& a, const Connector& b) { return a.key < b.key; });
    chosen_.clear();
    std::vector<int> all(cands_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    return dfs(all, 0, 0, 0, -1);
  }

  bool cancelled() const { return cancelled_; }
  std::uint64_t nodes() const { return nodes_; }
  std::uint64_t connectors() const { return connectors_; }

  std::vector<TreeCertificate> witness() const {
    std::vector<TreeCertificate> out;
    for (int c : chosen_) out.push_back(spanning_tree(cands_[static_cast<std::size_t>(c)]));
    return out;
  }

 private:
  Mask adj_in(int v, std::uint32_t A) const {
    Mask m = adj_[static_cast<std::size_t>(v)];
    if (term_mask_ & bit(v)) {
      for (std::size_t e = 0; e < tt_.size(); ++e) {
        if (A & (1u << e)) continue;
        if (tt_[e].first == v) m &= ~bit(tt_[e].second);
        if (tt_[e].second == v) m &= ~bit(tt_[e].first);
      }
    }
    return m;
  }

  bool connected(Mask set, std::uint32_t A) const {
    if (!set) return true;
    Mask seen = set & (~set + 1);
    Mask frontier = seen;
    while (frontier) {
      const int v = std::countr_zero(frontier);
      frontier &= frontier - 1;
      const Mask fresh = adj_in(v, A) & set & ~seen;
      seen |= fresh;
      frontier |= fresh;
    }
    return seen == set;
  }

  bool tt_needed(Mask set, std::uint32_t A) const {
    for (std::size_t e = 0; e < tt_.size(); ++e) {
      if ((A & (1u << e)) && connected(set, A & ~(1u << e))) return false;
    }
    return true;
  }

  bool minimal(Mask set, std::uint32_t A) const {
    Mask inner = set & ~term_mask_;
    while (inner) {
      const int v = std::countr_zero(inner);
      inner &= inner - 1;
      if (connected(set & ~bit(v), A)) return false;
    }
    return tt_needed(set, A);
  }

  // Every remaining tree needs its own edge at each terminal.
  bool degree_ok(Mask set, std::uint32_t A) const {
    for (int t : terms_) {
      const int used = std::popcount(adj_in(t, A) & set);
      if (used > degree(t) - (m_ - 1)) return false;
    }
    return true;
  }

  bool reachable(Mask set, Mask excluded, std::uint32_t A) const {
    Mask seen = set;
    Mask frontier = set;
    while (frontier) {
      const int v = std::countr_zero(frontier);
      frontier &= frontier - 1;
      const Mask fresh = adj_in(v, A) & ~seen & ~excluded;
      seen |= fresh;
      frontier |= fresh;
    }
    return (seen & term_mask_) == term_mask_;
  }

  void enumerate(std::uint32_t A) {
    const Mask root = bit(terms_.front());
    grow(root, 0, A);
  }

  void grow(Mask set, Mask excluded, std::uint32_t A) {
    if (cancelled_) return;
    if ((++nodes_ & 0xfff) == 0 && stop_.stop_requested()) {
      cancelled_ = true;
      return;
    }
    if (!degree_ok(set, A)) return;
    if ((set & term_mask_) == term_mask_) {
      if (minimal(set, A)) cands_.push_back({set & ~term_mask_, A, key_of(set, A)});
      return;
    }
    if (!reachable(set, excluded, A)) return;
    Mask frontier = 0;
    for (Mask s = set; s; s &= s - 1) frontier |= adj_in(std::countr_zero(s), A);
    frontier &= ~set & ~excluded;
    if (!frontier) return;
    const Mask pick_from = (frontier & term_mask_) ? (frontier & term_mask_) : frontier;
    const int v = std::countr_zero(pick_from);
    grow(set | bit(v), excluded, A);
    if ((term_mask_ & bit(v)) == 0) grow(set, excluded | bit(v), A);
  }

  int key_of(Mask set, std::uint32_t A) const {
    const int root = terms_.front();
    const Mask nb = adj_in(root, A) & set;
    // Slot = position of the neighbour in the root's adjacency order.
    int slot = 0;
    for (int w : g_.neighbors(root)) {
      if (nb & bit(w)) return slot;
      ++slot;
    }
    return slot;
  }

  bool dfs(const std::vector<int>& pool, int depth, Mask used, std::uint32_t used_tt, int last_key) {
    if (depth == m_) return true;
    if (cancelled_) return false;
    if ((++nodes_ & 0xfff) == 0 && stop_.stop_requested()) {
      cancelled_ = true;
      return false;
    }
    const int need = m_ - depth;
    for (std::size_t idx = 0; idx < pool.size(); ++idx) {
      const Connector& c = cands_[static_cast<std::size_t>(pool[idx])];
      if (c.key <= last_key) continue;
      // Remaining distinct keys must cover the trees still to place.
      const int max_key = static_cast<int>(g_.neighbors(terms_.front()).size()) - 1;
      if (max_key - c.key + 1 < need) break;
      const Mask u2 = used | c.interior;
      const std::uint32_t t2 = used_tt | c.tt;
      if (!spare_ok(u2, t2, need - 1)) continue;
      std::vector<int> next;
      for (std::size_t j = idx + 1; j < pool.size(); ++j) {
        const Connector& d = cands_[static_cast<std::size_t>(pool[j])];
        if (d.key > c.key && !(d.interior & u2) && !(d.tt & t2)) next.push_back(pool[j]);
      }
      chosen_.push_back(pool[idx]);
      if (dfs(next, depth + 1, u2, t2, c.key)) return true;
      chosen_.pop_back();
      if (cancelled_) return false;
    }
    return false;
  }

  bool spare_ok(Mask used, std::uint32_t used_tt, int need) const {
    if (need <= 0) return true;
    for (int t : terms_) {
      int spare = std::popcount(adj_[static_cast<std::size_t>(t)] & ~used & ~term_mask_);
      for (std::size_t e = 0; e < tt_.size(); ++e) {
        if (!(used_tt & (1u << e)) && (tt_[e].first == t || tt_[e].second == t)) ++spare;
      }
      if (spare < need) return false;
    }
    return true;
  }

  TreeCertificate spanning_tree(const Connector& c) const {
    const Mask set = c.interior | term_mask_;
    TreeCertificate tree;
    Mask seen = bit(terms_.front());
    std::deque<int> queue{terms_.front()};
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      Mask fresh = adj_in(v, c.tt) & set & ~seen;
      seen |= fresh;
      for (; fresh; fresh &= fresh - 1) {
        const int w = std::countr_zero(fresh);
        tree.edges.emplace_back(g_.vertex(v), g_.vertex(w));
        queue.push_back(w);
      }
    }
    std::sort(tree.edges.begin(), tree.edges.end());
    tree.provenance.push_back("oracle");
    return tree;
  }

  const RegionGraph& g_;
  std::vector<int> terms_;
  std::stop_token stop_;
  std::vector<Mask> adj_;
  Mask term_mask_ = 0;
  std::vector<std::pair<int, int>> tt_;
  int m_ = 0;
  std::vector<Connector> cands_;
  std::vector<int> chosen_;
  std::uint64_t nodes_ = 0;
  std::uint64_t connectors_ = 0;
  bool cancelled_ = false;
};

}  // namespace

OracleResult max_tree_packing(const RegionSpec& r, const std::vector<Permutation>& S,
                              std::stop_token stop) {
  const RegionGraph g(r);
  if (g.size() > kOracleGuard) {
    throw GuardExceeded("oracle region " + r.to_string() + " has " + std::to_string(g.size()) +
                            " vertices, limit is " + std::to_string(kOracleGuard),
                        static_cast<std::uint64_t>(g.size()), kOracleGuard);
  }
  if (S.size() < 2) throw std::invalid_argument("oracle needs at least two terminals");
  std::vector<int> terms;
  for (const auto& s : S) {
    const int id = g.index_of(s);
    if (id < 0) throw std::invalid_argument("terminal " + to_string(s) + " is not in the region");
    terms.push_back(id);
  }
  std::sort(terms.begin(), terms.end());
  if (std::adjacent_find(terms.begin(), terms.end()) != terms.end()) {
    throw std::invalid_argument("oracle terminals must be distinct");
  }

  PackingSearch search(g, terms, stop);
  int bound = g.size();
  for (int t : terms) bound = std::min(bound, search.degree(t));

  OracleResult result;
  result.witness.n = r.arity();
  result.witness.terminals = S;
  std::sort(result.witness.terminals.begin(), result.witness.terminals.end());
  for (int m = 1; m <= bound; ++m) {
    if (!search.pack(m)) {
      result.cancelled = search.cancelled();
      break;
    }
    result.value = m;
    result.witness.trees = search.witness();
    for (auto& t : result.witness.trees) t.terminals = result.witness.terminals;
  }
  result.witness.fallback_used.assign(result.witness.trees.size(), false);
  result.upper_bound_source =
      result.value == bound ? UpperBoundSource::degree_lemma : UpperBoundSource::exhaustion;
  result.connectors = search.connectors();
  result.nodes = search.nodes();
  return result;
}

int degree_upper_bound(const RegionSpec& r, int k) {
  if (k < 2) throw std::invalid_argument("degree_upper_bound needs k >= 2");
  const RegionGraph g(r);
  if (g.size() < k) throw std::invalid_argument("region has fewer than k vertices");
  int delta = g.size();
  for (int v = 0; v < g.size(); ++v) delta = std::min(delta, static_cast<int>(g.neighbors(v).size()));
  for (int v = 0; v < g.size(); ++v) {
    if (static_cast<int>(g.neighbors(v).size()) != delta) continue;
    for (int w : g.neighbors(v)) {
      if (static_cast<int>(g.neighbors(w).size()) == delta) return delta - 1;
    }
  }
  return delta;
}

namespace {

template <class F>
void for_each_4set(int count, F&& f) {
  for (int a = 0; a < count; ++a)
    for (int b = a + 1; b < count; ++b)
      for (int c = b + 1; c < count; ++c)
        for (int d = c + 1; d < count; ++d) f(a, b, c, d);
}

}  // namespace

Kappa4Report kappa4_exhaustive_report(int n, std::size_t oracle_samples, std::uint64_t seed) {
  if (n != 3 && n != 4) throw std::invalid_argument("kappa4_exhaustive supports n = 3 or 4");
  const BubbleGraph g(n);
  const RegionSpec whole = RegionSpec::whole(n);
  const int count = static_cast<int>(factorial(n));
  Kappa4Report rep;
  rep.n = n;
  rep.upper_bound = degree_upper_bound(whole, 4);
  rep.builder_min = n;
  rep.oracle_min = count;
  auto oracle_on = [&](const std::vector<Permutation>& S) {
    const int v = max_tree_packing(whole, S).value;
    rep.oracle_min = std::min(rep.oracle_min, v);
    rep.oracle_max = std::max(rep.oracle_max, v);
    ++rep.oracle_checked;
  };
  for_each_4set(count, [&](int a, int b, int c, int d) {
    const std::vector<Permutation> S{unrank(static_cast<std::uint64_t>(a), n), unrank(static_cast<std::uint64_t>(b), n),
                                     unrank(static_cast<std::uint64_t>(c), n), unrank(static_cast<std::uint64_t>(d), n)};
    ++rep.subsets;
    const TreePacking p = build_trees(n, S);
    const bool ok = verify_packing(g, S, p).ok;
    if (!ok) ++rep.builder_failures;
    rep.builder_min = std::min(rep.builder_min, ok ? static_cast<int>(p.trees.size()) : 0);
    if (n == 3) oracle_on(S);
  });
  if (n == 4) {
    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < oracle_samples; ++k) {
      std::vector<Permutation> S;
      for (auto r : distinct_below(rng, static_cast<std::uint64_t>(count), 4)) S.push_back(unrank(r, n));
      oracle_on(S);
    }
  }
  // n = 3 is exact by exhaustion. At n = 4 the builder gives the lower bound
  // on every subset; it is exact when it meets the smaller upper bound.
  if (n == 3) {
    rep.value = rep.oracle_min;
  } else {
    const int upper = std::min(rep.upper_bound, rep.oracle_min);
    rep.value = rep.builder_min == upper ? upper : -1;
  }
  return rep;
}

int kappa4_exhaustive(int n) { return kappa4_exhaustive_report(n).value; }

}  // namespace bubblepack
