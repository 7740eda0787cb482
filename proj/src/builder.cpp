#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "bubblepack/errors.hpp"
#include "bubblepack/tree_builder.hpp"
#include "bubblepack/verifier.hpp"
#include "build_internal.hpp"
#include "script.hpp"

namespace bubblepack {

const Anchor* CasePlan::find_anchor(const std::string& name) const {
  for (const auto& a : anchors) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

namespace detail {

TreeCertificate normalize_tree(const TreeCertificate& tree, const std::vector<Permutation>& S) {
  std::map<Permutation, std::vector<Permutation>> adj;
  for (const auto& e : tree.edges) {
    if (e.a == e.b) continue;
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  for (auto& [v, nb] : adj) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }
  TreeCertificate out;
  out.terminals = tree.terminals.empty() ? S : tree.terminals;
  out.provenance = tree.provenance;
  if (S.empty() || adj.empty()) return out;
  const Permutation root = *std::min_element(S.begin(), S.end());
  std::map<Permutation, std::set<Permutation>> tadj;
  std::set<Permutation> seen{root};
  std::deque<Permutation> queue{root};
  while (!queue.empty()) {
    const Permutation v = queue.front();
    queue.pop_front();
    for (const auto& w : adj[v]) {
      if (!seen.insert(w).second) continue;
      tadj[v].insert(w);
      tadj[w].insert(v);
      queue.push_back(w);
    }
  }
  const std::set<Permutation> terms(S.begin(), S.end());
  std::deque<Permutation> leaves;
  for (const auto& [v, nb] : tadj) {
    if (nb.size() == 1 && !terms.count(v)) leaves.push_back(v);
  }
  while (!leaves.empty()) {
    const Permutation v = leaves.front();
    leaves.pop_front();
    auto it = tadj.find(v);
    if (it == tadj.end() || it->second.size() != 1) continue;
    const Permutation nb = *it->second.begin();
    tadj.erase(it);
    auto& rest = tadj[nb];
    rest.erase(v);
    if (rest.size() == 1 && !terms.count(nb)) leaves.push_back(nb);
  }
  for (const auto& [v, nb] : tadj) {
    for (const auto& w : nb) {
      if (v < w) out.edges.emplace_back(v, w);
    }
  }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

Permutation drop_last(const Permutation& u) {
  const int n = u.arity();
  const int i = u.last();
  std::vector<int> seq;
  for (int k = 1; k < n; ++k) seq.push_back(u(k) < i ? u(k) : u(k) - 1);
  return Permutation(seq);
}

Permutation append_symbol(const Permutation& v, int i) {
  std::vector<int> seq;
  for (int k = 1; k <= v.arity(); ++k) seq.push_back(v(k) < i ? v(k) : v(k) + 1);
  seq.push_back(i);
  return Permutation(seq);
}

Permutation relabel(const Permutation& map, const Permutation& u) { return compose(map, u); }

TreePacking finish(const CasePlan& plan, TreePacking scripted, const std::string& label) {
  const int k = plan.n - 2;
  const BubbleGraph g(plan.n);
  std::vector<Permutation> S = plan.S;
  std::sort(S.begin(), S.end());
  scripted.n = plan.n;
  scripted.terminals = S;
  for (auto& t : scripted.trees) {
    t = normalize_tree(t, S);
    t.terminals = S;
  }
  scripted.fallback_used.resize(scripted.trees.size(), false);
  scripted.case_trail.insert(scripted.case_trail.begin(), "case " + label);

  if (static_cast<int>(scripted.trees.size()) == k && verify_packing(g, S, scripted).ok) {
    return scripted;
  }
  // Keep the longest clean prefix.
  std::size_t clean = 0;
  for (std::size_t len = 1; len <= scripted.trees.size() && static_cast<int>(len) <= k; ++len) {
    TreePacking prefix = scripted;
    prefix.trees.resize(len);
    prefix.fallback_used.resize(len);
    if (!verify_packing(g, S, prefix).ok) break;
    clean = len;
  }
  TreePacking partial = scripted;
  partial.trees.resize(clean);
  partial.fallback_used.resize(clean);
  partial.case_trail.push_back("scripted trees kept: " + std::to_string(clean) + "/" + std::to_string(k));
  try {
    TreePacking out = search_fallback(RegionSpec::whole(plan.n), S, k, partial);
    return out;
  } catch (const ConstructionFailure& e) {
    throw ConstructionFailure(std::string("case ") + label + ": " + e.what(), plan);
  }
}

}  // namespace detail

namespace {

void require_instance(int n, const std::vector<Permutation>& S) {
  if (n < 3 || n > kBuildMaxArity) {
    throw std::invalid_argument("build_trees: n must be in [3, " + std::to_string(kBuildMaxArity) +
                                "], got " + std::to_string(n));
  }
  if (S.size() != 4) throw std::invalid_argument("build_trees: S must have four vertices");
  for (const auto& s : S) {
    if (s.arity() != n) throw std::invalid_argument("build_trees: " + to_string(s) + " has wrong arity");
  }
  std::vector<Permutation> sorted = S;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("build_trees: S has repeated vertices");
  }
}

// Subtree of a cycle spanning the terminals: the cycle minus the interior of
// its longest terminal-free arc.
TreeCertificate cycle_subtree(const RegionGraph& g, const std::vector<Permutation>& S) {
  std::vector<int> order{0};
  for (int prev = -1, cur = 0;;) {
    int next = -1;
    for (int w : g.neighbors(cur)) {
      if (w != prev) {
        next = w;
        break;
      }
    }
    if (next == 0 || next < 0) break;
    order.push_back(next);
    prev = cur;
    cur = next;
  }
  const int len = static_cast<int>(order.size());
  std::vector<char> term(static_cast<std::size_t>(len), 0);
  for (int k = 0; k < len; ++k) {
    term[static_cast<std::size_t>(k)] =
        std::find(S.begin(), S.end(), g.vertex(order[static_cast<std::size_t>(k)])) != S.end();
  }
  // Gap starting at terminal position a: edges until the next terminal.
  int best_start = -1;
  int best_len = -1;
  Edge best_key;
  for (int a = 0; a < len; ++a) {
    if (!term[static_cast<std::size_t>(a)]) continue;
    int b = (a + 1) % len;
    int gap = 1;
    while (!term[static_cast<std::size_t>(b)]) {
      b = (b + 1) % len;
      ++gap;
    }
    const Edge key(g.vertex(order[static_cast<std::size_t>(a)]), g.vertex(order[static_cast<std::size_t>(b)]));
    if (gap > best_len || (gap == best_len && key < best_key)) {
      best_len = gap;
      best_start = a;
      best_key = key;
    }
  }
  TreeCertificate tree;
  // Walk from the end of the removed gap around to its start.
  int pos = (best_start + best_len) % len;
  for (int step = 0; step < len - best_len; ++step) {
    const int nxt = (pos + 1) % len;
    tree.edges.emplace_back(g.vertex(order[static_cast<std::size_t>(pos)]),
                            g.vertex(order[static_cast<std::size_t>(nxt)]));
    pos = nxt;
  }
  std::sort(tree.edges.begin(), tree.edges.end());
  tree.terminals = S;
  return tree;
}

TreePacking base_case(const std::vector<Permutation>& S) {
  const RegionGraph g(RegionSpec::whole(3));
  TreePacking p;
  p.n = 3;
  p.terminals = S;
  std::sort(p.terminals.begin(), p.terminals.end());
  TreeCertificate t = cycle_subtree(g, p.terminals);
  t.provenance.push_back("base: minimal subtree of the 6-cycle");
  p.trees.push_back(std::move(t));
  p.fallback_used.push_back(false);
  p.case_trail.push_back("base n=3");
  return p;
}

}  // namespace

CasePlan classify_case(int n, const std::vector<Permutation>& S) {
  require_instance(n, S);
  CasePlan plan;
  plan.n = n;
  plan.S = S;
  std::map<int, std::vector<Permutation>> by_part;
  for (const auto& s : S) by_part[main_part(s)].push_back(s);
  for (auto& [part, vs] : by_part) std::sort(vs.begin(), vs.end());

  // Parts ordered by size descending, ties by their least member's rank.
  std::vector<std::pair<int, std::vector<Permutation>>> parts(by_part.begin(), by_part.end());
  std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) {
    if (a.second.size() != b.second.size()) return a.second.size() > b.second.size();
    return a.second.front() < b.second.front();
  });
  std::vector<Permutation> roles;
  for (const auto& [part, vs] : parts) roles.insert(roles.end(), vs.begin(), vs.end());
  plan.x = roles[0];
  plan.y = roles[1];
  plan.z = roles[2];
  plan.w = roles[3];
  switch (parts.size()) {
    case 1:
      plan.case_id = 1;
      break;
    case 2:
      plan.case_id = parts[0].second.size() == 2 ? 2 : 5;
      break;
    case 3:
      plan.case_id = 3;
      break;
    default:
      plan.case_id = 4;
      break;
  }
  // Canonical relabelling: the i-th listed part becomes V_i.
  std::vector<int> map(static_cast<std::size_t>(n) + 1, 0);
  std::vector<char> taken(static_cast<std::size_t>(n) + 1, 0);
  int target = 1;
  for (const auto& [part, vs] : parts) {
    map[static_cast<std::size_t>(part)] = target;
    taken[static_cast<std::size_t>(target)] = 1;
    ++target;
  }
  int next = 1;
  for (int s = 1; s <= n; ++s) {
    if (map[static_cast<std::size_t>(s)]) continue;
    while (taken[static_cast<std::size_t>(next)]) ++next;
    map[static_cast<std::size_t>(s)] = next;
    taken[static_cast<std::size_t>(next)] = 1;
  }
  plan.relabel = Permutation(std::span<const int>(map.data() + 1, static_cast<std::size_t>(n)));
  for (const auto& [name, v] : {std::pair{"x", plan.x}, {"y", plan.y}, {"z", plan.z}, {"w", plan.w}}) {
    plan.anchors.push_back({name, v, "", {}});
  }
  return plan;
}

TreePacking build_case1(const CasePlan& plan) {
  const int n = plan.n;
  const int i = main_part(plan.x);
  std::vector<Permutation> inner;
  for (const auto& s : plan.S) inner.push_back(detail::drop_last(s));
  TreePacking rec = build_trees(n - 1, inner);
  TreePacking out;
  for (std::size_t t = 0; t < rec.trees.size(); ++t) {
    TreeCertificate lifted;
    for (const auto& e : rec.trees[t].edges) {
      lifted.edges.emplace_back(detail::append_symbol(e.a, i), detail::append_symbol(e.b, i));
    }
    lifted.provenance = rec.trees[t].provenance;
    lifted.provenance.insert(lifted.provenance.begin(), "case 1: recursion inside V_" + std::to_string(i));
    out.trees.push_back(std::move(lifted));
  }
  for (const auto& c : rec.case_trail) out.case_trail.push_back("  " + c);
  const RegionSpec outside = RegionSpec::difference(RegionSpec::whole(n), RegionSpec::parts(n, {i}));
  TreeCertificate outer = region_spanning_tree(outside);
  const BubbleGraph g(n);
  for (const auto& s : plan.S) outer.edges.emplace_back(s, g.out_neighbor(s));
  outer.provenance.push_back("case 1: spanning tree of V \\ V_" + std::to_string(i) + " plus out-edges");
  out.trees.push_back(std::move(outer));
  TreePacking done = detail::finish(plan, std::move(out), "1");
  // Recursion flags carry over to the lifted trees.
  for (std::size_t t = 0; t < rec.trees.size() && t < done.fallback_used.size(); ++t) {
    if (t < rec.fallback_used.size() && rec.fallback_used[t]) done.fallback_used[t] = true;
  }
  return done;
}

BuildTrace build_trees_traced(int n, const std::vector<Permutation>& S) {
  require_instance(n, S);
  BuildTrace trace;
  if (n == 3) {
    trace.packing = base_case(S);
    trace.plan.n = 3;
    trace.plan.S = S;
    trace.plan.subcase = "base";
    return trace;
  }
  trace.plan = classify_case(n, S);
  switch (trace.plan.case_id) {
    case 1:
      trace.packing = build_case1(trace.plan);
      break;
    case 2:
      trace.packing = detail::run_case2(trace.plan);
      break;
    case 3:
      trace.packing = detail::run_case3(trace.plan);
      break;
    case 4:
      trace.packing = detail::run_case4(trace.plan);
      break;
    default:
      trace.packing = detail::run_case5(trace.plan);
      break;
  }
  return trace;
}

TreePacking build_trees(int n, const std::vector<Permutation>& S) { return build_trees_traced(n, S).packing; }

std::vector<std::string> check_anchor_formulas(const CasePlan& plan) {
  // Names may be rebound; each anchor is checked against its base as bound at the time.
  std::vector<std::string> bad;
  std::map<std::string, Permutation> bound;
  for (const auto& a : plan.anchors) {
    if (a.base.empty()) {
      bound[a.name] = a.value;
      continue;
    }
    const auto base = bound.find(a.base);
    if (base == bound.end()) {
      bad.push_back(a.name + " (unknown base " + a.base + ")");
      bound[a.name] = a.value;
      continue;
    }
    Permutation v = base->second;
    bool ok = true;
    for (int p : a.swaps) {
      if (p < 1 || p >= v.arity()) {
        ok = false;
        break;
      }
      v = v.swap_adjacent(p);
    }
    if (!ok || v != a.value) bad.push_back(a.name);
    bound[a.name] = a.value;
  }
  return bad;
}

TreePacking steiner_packing_k3(const RegionSpec& r, const std::vector<Permutation>& S3, int k) {
  if (S3.size() != 3) throw std::invalid_argument("steiner_packing_k3 needs three terminals");
  for (const auto& s : S3) {
    if (!r.contains(s)) throw std::invalid_argument("steiner_packing_k3: terminal outside region");
  }
  std::vector<Permutation> S = S3;
  std::sort(S.begin(), S.end());
  if (std::adjacent_find(S.begin(), S.end()) != S.end()) {
    throw std::invalid_argument("steiner_packing_k3: repeated terminal");
  }
  const std::uint64_t size = r.size_bound();
  if (size == 6 && k == 1) {
    const RegionGraph g(r);
    bool cycle = g.size() == 6;
    for (int v = 0; v < g.size() && cycle; ++v) cycle = g.neighbors(v).size() == 2;
    if (cycle) {
      TreePacking p;
      p.n = r.arity();
      p.terminals = S;
      TreeCertificate t = cycle_subtree(g, S);
      t.provenance.push_back("k3: minimal subtree of the 6-cycle");
      p.trees.push_back(std::move(t));
      p.fallback_used.push_back(false);
      p.case_trail.push_back("k3 base");
      return p;
    }
  }
  TreePacking empty;
  empty.n = r.arity();
  empty.terminals = S;
  TreePacking p = search_fallback(r, S, k, empty);
  for (auto& t : p.trees) {
    t = detail::normalize_tree(t, S);
    t.terminals = S;
  }
  return p;
}

}  // namespace bubblepack
