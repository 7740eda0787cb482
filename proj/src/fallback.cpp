#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "bubblepack/errors.hpp"
#include "bubblepack/oracle.hpp"
#include "bubblepack/tree_builder.hpp"
#include "bubblepack/verifier.hpp"
#include "build_internal.hpp"

namespace bubblepack {

namespace {

constexpr long kStepCost = 8;
constexpr long kReservePenalty = 64;
constexpr int kFree = -1;
constexpr int kTerminal = -2;
constexpr int kFixed = -3;

struct Strategy {
  std::vector<int> order;  // terminal slots
  bool reserve;
  std::uint64_t noise_seed;  // 0: no noise
};

using LocalEdge = std::pair<int, int>;

LocalEdge local_edge(int a, int b) { return a < b ? LocalEdge{a, b} : LocalEdge{b, a}; }

class Grower {
 public:
  Grower(const RegionGraph& g, std::vector<int> terminals) : g_(g), terms_(std::move(terminals)) {
    base_owner_.assign(static_cast<std::size_t>(g_.size()), kFree);
    for (int t : terms_) base_owner_[static_cast<std::size_t>(t)] = kTerminal;
  }

  // Vertices and terminal-terminal edges taken by kept trees.
  void reserve_tree(const std::vector<LocalEdge>& edges) {
    for (const auto& [a, b] : edges) {
      for (int v : {a, b}) {
        if (base_owner_[static_cast<std::size_t>(v)] == kFree) base_owner_[static_cast<std::size_t>(v)] = kFixed;
      }
      base_used_tt_.insert(local_edge(a, b));
    }
  }

  std::uint64_t attempts() const { return attempts_; }

  // m new trees, or empty on failure.
  std::vector<std::vector<LocalEdge>> grow(int m, const Strategy& st) {
    owner_ = base_owner_;
    used_tt_ = base_used_tt_;
    std::vector<std::vector<LocalEdge>> trees(static_cast<std::size_t>(m));
    if (m == 0) return trees;
    std::vector<char> attached(terms_.size(), 0);
    attached[static_cast<std::size_t>(st.order[0])] = 1;
    std::mt19937_64 rng(st.noise_seed);
    noise_.assign(static_cast<std::size_t>(g_.size()), 0);
    if (st.noise_seed) {
      for (auto& x : noise_) x = static_cast<long>(rng() % 16);
    }
    for (std::size_t j = 1; j < st.order.size(); ++j) {
      ++attempts_;
      const int slot = st.order[j];
      if (!attach(terms_[static_cast<std::size_t>(slot)], m, attached, trees, st.reserve)) return {};
      attached[static_cast<std::size_t>(slot)] = 1;
    }
    return trees;
  }

 private:
  bool attach(int t, int m, const std::vector<char>& attached,
              std::vector<std::vector<LocalEdge>>& trees, bool reserve) {
    const int n = g_.size();
    std::vector<char> near_pending(static_cast<std::size_t>(n), 0);
    std::vector<char> is_attached(static_cast<std::size_t>(n), 0);
    for (std::size_t s = 0; s < terms_.size(); ++s) {
      const int u = terms_[s];
      if (attached[s]) {
        is_attached[static_cast<std::size_t>(u)] = 1;
      } else if (u != t && reserve) {
        for (int w : g_.neighbors(u)) near_pending[static_cast<std::size_t>(w)] = 1;
      }
    }
    const int a_node = 2 * n;
    const int sink0 = 2 * n + 1;
    const int tnode = sink0 + m;
    FlowNetwork net(tnode + 1);
    // Arc id -> (end vertex, tree or -1 for a terminal end).
    std::vector<std::pair<int, int>> meta;
    auto note = [&](int arc, int end) {
      if (static_cast<std::size_t>(arc) >= meta.size()) meta.resize(static_cast<std::size_t>(arc) + 1, {-1, -1});
      meta[static_cast<std::size_t>(arc)] = {end, 0};
    };
    auto link = [&](int v, int w, int from_node) {
      const int ow = owner_[static_cast<std::size_t>(w)];
      if (ow == kFree) {
        net.add_arc(from_node, 2 * w, 1, 0);
      } else if (ow >= 0) {
        note(net.add_arc(from_node, sink0 + ow, 1, kStepCost), w);
      } else if (ow == kTerminal && is_attached[static_cast<std::size_t>(w)] &&
                 !used_tt_.count(local_edge(v, w))) {
        note(net.add_arc(from_node, a_node, 1, kStepCost), w);
      }
    };
    for (int v = 0; v < n; ++v) {
      if (owner_[static_cast<std::size_t>(v)] != kFree) continue;
      long cost = kStepCost + noise_[static_cast<std::size_t>(v)];
      if (near_pending[static_cast<std::size_t>(v)]) cost += kReservePenalty;
      net.add_arc(2 * v, 2 * v + 1, 1, cost);
      for (int w : g_.neighbors(v)) {
        // A free vertex may not step onto the terminal being attached.
        if (w == t) continue;
        link(v, w, 2 * v + 1);
      }
    }
    for (int w : g_.neighbors(t)) link(t, w, 2 * t + 1);
    for (int i = 0; i < m; ++i) {
      net.add_arc(a_node, sink0 + i, 1, 0);
      net.add_arc(sink0 + i, tnode, 1, 0);
    }
    const int got = net.min_cost_flow(2 * t + 1, tnode, m);
    if (got < m) return false;

    // Decompose: each unit leaves t's out-node.
    for (int unit = 0; unit < m; ++unit) {
      std::vector<int> path{t};
      int node = 2 * t + 1;
      int tree = -1;
      while (tree < 0) {
        int next = -1;
        for (int a : net.out_arcs(node)) {
          if (net.arc(a).forward && net.flow(a) > 0) {
            next = a;
            break;
          }
        }
        if (next < 0) return false;
        net.consume(next);
        const int to = net.arc(next).to;
        if (to < 2 * n) {
          path.push_back(to / 2);
          node = 2 * (to / 2) + 1;
          net.consume([&] {
            for (int a : net.out_arcs(to)) {
              if (net.arc(a).forward && net.arc(a).to == to + 1 && net.flow(a) > 0) return a;
            }
            return -1;
          }());
        } else if (to == a_node) {
          path.push_back(meta[static_cast<std::size_t>(next)].first);
          node = a_node;
        } else if (to >= sink0 && to < tnode) {
          if (node != a_node) path.push_back(meta[static_cast<std::size_t>(next)].first);
          tree = to - sink0;
        }
      }
      auto& edges = trees[static_cast<std::size_t>(tree)];
      for (std::size_t s = 1; s < path.size(); ++s) {
        edges.push_back(local_edge(path[s - 1], path[s]));
        const int v = path[s];
        if (owner_[static_cast<std::size_t>(v)] == kFree) owner_[static_cast<std::size_t>(v)] = tree;
      }
      if (path.size() == 2 && owner_[static_cast<std::size_t>(path[1])] == kTerminal) {
        used_tt_.insert(local_edge(path[0], path[1]));
      }
    }
    return true;
  }

  const RegionGraph& g_;
  std::vector<int> terms_;
  std::vector<int> base_owner_;
  std::set<LocalEdge> base_used_tt_;
  std::vector<int> owner_;
  std::set<LocalEdge> used_tt_;
  std::vector<long> noise_;
  std::uint64_t attempts_ = 0;
};

std::vector<Strategy> strategies(std::size_t terminals, std::uint64_t seed, std::size_t rounds) {
  std::vector<int> order(terminals);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::vector<int>> orders;
  do {
    orders.push_back(order);
  } while (std::next_permutation(order.begin(), order.end()));
  std::vector<Strategy> out;
  for (bool reserve : {true, false}) {
    for (const auto& o : orders) out.push_back({o, reserve, 0});
  }
  std::mt19937_64 rng(seed);
  for (std::size_t r = 0; r < rounds; ++r) {
    for (const auto& o : orders) out.push_back({o, r % 2 == 0, rng() | 1});
  }
  return out;
}

TreeCertificate to_certificate(const RegionGraph& g, const std::vector<LocalEdge>& edges,
                               const std::vector<Permutation>& S) {
  TreeCertificate tree;
  for (const auto& [a, b] : edges) tree.edges.emplace_back(g.vertex(a), g.vertex(b));
  tree.terminals = S;
  return tree;
}

}  // namespace

TreePacking search_fallback(const RegionSpec& r, const std::vector<Permutation>& S, int k,
                            const TreePacking& partial) {
  if (k < 0) throw std::invalid_argument("search_fallback: negative tree count");
  if (static_cast<int>(partial.trees.size()) >= k) return partial;

  const RegionGraph g(r);
  std::vector<Permutation> terminals = S;
  std::sort(terminals.begin(), terminals.end());
  std::vector<int> ids;
  for (const auto& s : terminals) {
    const int id = g.index_of(s);
    if (id < 0) throw std::invalid_argument("search_fallback: terminal " + to_string(s) + " outside region");
    ids.push_back(id);
  }

  TreePacking base = partial;
  base.n = r.arity();
  base.terminals = terminals;
  base.fallback_used.resize(base.trees.size(), false);

  // Keep the leading trees that are verifier-clean and inside the region.
  const BubbleGraph bg(r.arity());
  std::size_t keep = 0;
  while (keep < base.trees.size()) {
    TreePacking prefix = base;
    prefix.trees.resize(keep + 1);
    bool inside = true;
    for (const auto& e : prefix.trees.back().edges) inside = inside && g.index_of(e.a) >= 0 && g.index_of(e.b) >= 0;
    if (!inside || !verify_packing(bg, terminals, prefix).ok) break;
    ++keep;
  }

  std::uint64_t seed = 0x6a09e667f3bcc908ull;
  for (const auto& s : terminals) seed = seed * 1000003ull + rank(s);

  const std::uint64_t budget = kFallbackBudgetPerTree * static_cast<std::uint64_t>(std::max(k, 1));
  std::uint64_t spent = 0;
  const std::size_t max_rounds = 64;

  for (std::size_t kept = keep;; --kept) {
    Grower grower(g, ids);
    std::vector<std::vector<LocalEdge>> fixed;
    for (std::size_t t = 0; t < kept; ++t) {
      std::vector<LocalEdge> le;
      for (const auto& e : base.trees[t].edges) le.push_back(local_edge(g.index_of(e.a), g.index_of(e.b)));
      grower.reserve_tree(le);
    }
    const int m = k - static_cast<int>(kept);
    std::vector<std::vector<LocalEdge>> grown;
    for (const auto& st : strategies(ids.size(), seed + kept, max_rounds)) {
      if (spent + grower.attempts() >= budget) break;
      grown = grower.grow(m, st);
      if (!grown.empty() || m == 0) break;
    }
    spent += grower.attempts();
    if (grown.empty() && kept == 0 && g.size() <= kOracleGuard) {
      // Tiny regions: the exact search decides.
      const OracleResult exact = max_tree_packing(r, terminals);
      if (exact.value >= k) {
        TreePacking out = base;
        out.trees.assign(exact.witness.trees.begin(), exact.witness.trees.begin() + k);
        out.fallback_used.assign(static_cast<std::size_t>(k), true);
        for (auto& t : out.trees) t.provenance = {"fallback: exact search"};
        out.case_trail.push_back("fallback: exact search");
        return out;
      }
    }
    if (!grown.empty() || m == 0) {
      TreePacking out = base;
      out.trees.resize(kept);
      out.fallback_used.resize(kept);
      for (auto& tree : grown) {
        TreeCertificate cert = to_certificate(g, tree, terminals);
        cert.provenance.push_back("fallback: flow-seeded growth");
        out.trees.push_back(detail::normalize_tree(cert, terminals));
        out.fallback_used.push_back(true);
      }
      out.case_trail.push_back("fallback kept " + std::to_string(kept) + " of " +
                               std::to_string(partial.trees.size()) + " scripted trees");
      return out;
    }
    if (kept == 0 || spent >= budget) break;
  }
  CasePlan plan;
  plan.n = r.arity();
  plan.S = S;
  plan.notes.push_back("fallback budget exhausted after " + std::to_string(spent) + " attach attempts");
  throw ConstructionFailure("search_fallback: no " + std::to_string(k) + "-tree packing found in " +
                                r.to_string(),
                            plan);
}

}  // namespace bubblepack
