#include "bubblepack/menger.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>

#include "bubblepack/errors.hpp"
#include "bubblepack/sampling.hpp"

namespace bubblepack {

std::string to_string(PathContract c) {
  switch (c) {
    case PathContract::pairwise_disjoint:
      return "pairwise-vertex-disjoint";
    case PathContract::internally_disjoint:
      return "internally-disjoint";
    case PathContract::fan:
      return "fan";
  }
  return "?";
}

std::string to_string(TerminalRole role) {
  static const char* const names[] = {"X", "Y", "Z", "W", "F", "F1"};
  return names[static_cast<int>(role)];
}

FlowNetwork::FlowNetwork(int nodes) : head_(static_cast<std::size_t>(nodes)) {}

int FlowNetwork::add_arc(int from, int to, int capacity, long cost) {
  const int id = static_cast<int>(arcs_.size());
  arcs_.push_back({to, capacity, cost, id + 1, true});
  arcs_.push_back({from, 0, -cost, id, false});
  head_[static_cast<std::size_t>(from)].push_back(id);
  head_[static_cast<std::size_t>(to)].push_back(id + 1);
  return id;
}

void FlowNetwork::push(std::vector<int>& parent_arc, int s, int t) {
  for (int v = t; v != s;) {
    const int a = parent_arc[static_cast<std::size_t>(v)];
    arcs_[static_cast<std::size_t>(a)].cap -= 1;
    arcs_[static_cast<std::size_t>(arcs_[static_cast<std::size_t>(a)].rev)].cap += 1;
    v = arcs_[static_cast<std::size_t>(arcs_[static_cast<std::size_t>(a)].rev)].to;
  }
}

int FlowNetwork::max_flow(int s, int t, int limit) {
  int total = 0;
  std::vector<int> parent(head_.size());
  std::deque<int> queue;
  while (total < limit) {
    std::fill(parent.begin(), parent.end(), -1);
    parent[static_cast<std::size_t>(s)] = -2;
    queue.assign(1, s);
    while (!queue.empty() && parent[static_cast<std::size_t>(t)] == -1) {
      const int u = queue.front();
      queue.pop_front();
      for (int a : head_[static_cast<std::size_t>(u)]) {
        const Arc& arc = arcs_[static_cast<std::size_t>(a)];
        if (arc.cap <= 0 || parent[static_cast<std::size_t>(arc.to)] != -1) continue;
        parent[static_cast<std::size_t>(arc.to)] = a;
        queue.push_back(arc.to);
      }
    }
    if (parent[static_cast<std::size_t>(t)] == -1) break;
    push(parent, s, t);
    ++total;
  }
  return total;
}

int FlowNetwork::min_cost_flow(int s, int t, int limit, long* cost) {
  constexpr long kInf = std::numeric_limits<long>::max() / 4;
  int total = 0;
  const std::size_t n = head_.size();
  std::vector<long> dist(n);
  std::vector<int> parent(n);
  std::vector<char> queued(n);
  std::deque<int> queue;
  while (total < limit) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(parent.begin(), parent.end(), -1);
    std::fill(queued.begin(), queued.end(), 0);
    dist[static_cast<std::size_t>(s)] = 0;
    queue.assign(1, s);
    queued[static_cast<std::size_t>(s)] = 1;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      queued[static_cast<std::size_t>(u)] = 0;
      for (int a : head_[static_cast<std::size_t>(u)]) {
        const Arc& arc = arcs_[static_cast<std::size_t>(a)];
        if (arc.cap <= 0) continue;
        const long d = dist[static_cast<std::size_t>(u)] + arc.cost;
        if (d < dist[static_cast<std::size_t>(arc.to)]) {
          dist[static_cast<std::size_t>(arc.to)] = d;
          parent[static_cast<std::size_t>(arc.to)] = a;
          if (!queued[static_cast<std::size_t>(arc.to)]) {
            queued[static_cast<std::size_t>(arc.to)] = 1;
            queue.push_back(arc.to);
          }
        }
      }
    }
    if (dist[static_cast<std::size_t>(t)] >= kInf) break;
    push(parent, s, t);
    if (cost) *cost += dist[static_cast<std::size_t>(t)];
    ++total;
  }
  return total;
}

std::vector<char> FlowNetwork::residual_reachable(int s) const {
  std::vector<char> seen(head_.size(), 0);
  std::deque<int> queue{s};
  seen[static_cast<std::size_t>(s)] = 1;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int a : head_[static_cast<std::size_t>(u)]) {
      const Arc& arc = arcs_[static_cast<std::size_t>(a)];
      if (arc.cap > 0 && !seen[static_cast<std::size_t>(arc.to)]) {
        seen[static_cast<std::size_t>(arc.to)] = 1;
        queue.push_back(arc.to);
      }
    }
  }
  return seen;
}

namespace {

constexpr int kWide = 1 << 20;

// Vertex v of the snapshot becomes in-node 2v and out-node 2v+1.
int in_node(int v) { return 2 * v; }
int out_node(int v) { return 2 * v + 1; }

enum class Role : char { free, source, sink, used };

struct SplitNetwork {
  FlowNetwork net;
  int s;
  int t;
};

// Vertices with role `used` or blocked get no arcs. Sources are entered only
// from s, sinks are left only towards t. `split_ends` controls whether the
// end vertices themselves carry a unit capacity.
SplitNetwork build_split(const RegionGraph& g, std::span<const char> blocked,
                         const std::vector<Role>& role, bool split_ends) {
  const int n = g.size();
  SplitNetwork sn{FlowNetwork(2 * n + 2), 2 * n, 2 * n + 1};
  auto usable = [&](int v) {
    return role[static_cast<std::size_t>(v)] != Role::used &&
           (blocked.empty() || !blocked[static_cast<std::size_t>(v)]);
  };
  for (int v = 0; v < n; ++v) {
    if (!usable(v)) continue;
    const Role rv = role[static_cast<std::size_t>(v)];
    if (rv == Role::free || split_ends) sn.net.add_arc(in_node(v), out_node(v), 1);
    if (rv == Role::source) sn.net.add_arc(sn.s, in_node(v), kWide);
    if (rv == Role::sink) {
      sn.net.add_arc(out_node(v), sn.t, kWide);
      continue;
    }
    for (int w : g.neighbors(v)) {
      if (!usable(w) || role[static_cast<std::size_t>(w)] == Role::source) continue;
      sn.net.add_arc(out_node(v), in_node(w), kWide);
    }
  }
  return sn;
}

// Walks one unit of flow from `from` (an out-node or s) to t.
std::vector<int> walk_unit(FlowNetwork& net, int from, int t) {
  std::vector<int> path;
  int node = from;
  while (node != t) {
    int next_arc = -1;
    for (int a : net.out_arcs(node)) {
      if (net.arc(a).forward && net.flow(a) > 0) {
        next_arc = a;
        break;
      }
    }
    if (next_arc < 0) throw std::logic_error("flow decomposition lost a unit");
    net.consume(next_arc);
    node = net.arc(next_arc).to;
    if (node != t && node % 2 == 0) path.push_back(node / 2);
  }
  return path;
}

std::vector<int> cut_from(const SplitNetwork& sn, int n) {
  const auto seen = sn.net.residual_reachable(sn.s);
  std::vector<int> cut;
  for (int v = 0; v < n; ++v) {
    if (seen[static_cast<std::size_t>(in_node(v))] && !seen[static_cast<std::size_t>(out_node(v))]) {
      cut.push_back(v);
    }
  }
  return cut;
}

bool adjacent_ids(const RegionGraph& g, int a, int b) {
  const auto nb = g.neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

// Keep only the last neighbour of the head vertex.
void shortcut_head(const RegionGraph& g, std::vector<int>& path, bool keep_tail) {
  const std::size_t end = keep_tail ? path.size() - 1 : path.size();
  for (std::size_t j = end; j-- > 2;) {
    if (adjacent_ids(g, path[0], path[j])) {
      path.erase(path.begin() + 1, path.begin() + static_cast<std::ptrdiff_t>(j));
      return;
    }
  }
}

void shortcut_tail(const RegionGraph& g, std::vector<int>& path) {
  const int v = path.back();
  for (std::size_t j = 1; j + 2 < path.size(); ++j) {
    if (adjacent_ids(g, v, path[j])) {
      path.erase(path.begin() + static_cast<std::ptrdiff_t>(j) + 1, path.end() - 1);
      return;
    }
  }
}

void check_ids(const RegionGraph& g, std::span<const int> ids, const char* what) {
  for (int id : ids) {
    if (id < 0 || id >= g.size()) throw std::invalid_argument(std::string(what) + ": vertex outside region");
  }
}

}  // namespace

LocalPaths local_set_paths(const RegionGraph& g, std::span<const char> blocked,
                           std::span<const int> X, std::span<const int> Y, std::size_t k) {
  check_ids(g, X, "set paths");
  check_ids(g, Y, "set paths");
  const int n = g.size();
  auto is_blocked = [&](int v) { return !blocked.empty() && blocked[static_cast<std::size_t>(v)]; };
  std::vector<Role> role(static_cast<std::size_t>(n), Role::free);
  std::vector<char> in_x(static_cast<std::size_t>(n), 0);
  for (int x : X) in_x[static_cast<std::size_t>(x)] = 1;
  LocalPaths out;
  std::vector<int> shared;
  std::vector<int> ys(Y.begin(), Y.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  for (int y : ys) {
    if (is_blocked(y)) continue;
    if (in_x[static_cast<std::size_t>(y)]) {
      shared.push_back(y);
      role[static_cast<std::size_t>(y)] = Role::used;
    } else {
      role[static_cast<std::size_t>(y)] = Role::sink;
    }
  }
  for (int x : X) {
    if (!is_blocked(x) && role[static_cast<std::size_t>(x)] == Role::free) {
      role[static_cast<std::size_t>(x)] = Role::source;
    }
  }
  for (int v : shared) {
    if (out.paths.size() == k) break;
    out.paths.push_back({v});
  }
  if (out.paths.size() < k) {
    SplitNetwork sn = build_split(g, blocked, role, true);
    const int want = static_cast<int>(k - out.paths.size());
    const int got = sn.net.max_flow(sn.s, sn.t, want);
    if (got < want) {
      out.cut = cut_from(sn, n);
      out.cut.insert(out.cut.end(), shared.begin(), shared.end());
      std::sort(out.cut.begin(), out.cut.end());
    }
    for (int i = 0; i < got; ++i) out.paths.push_back(walk_unit(sn.net, sn.s, sn.t));
  }
  return out;
}

LocalPaths local_fan_paths(const RegionGraph& g, std::span<const char> blocked, int x,
                           std::span<const int> Y, std::size_t k) {
  check_ids(g, std::span<const int>(&x, 1), "fan paths");
  check_ids(g, Y, "fan paths");
  if (std::find(Y.begin(), Y.end(), x) != Y.end()) {
    throw std::invalid_argument("fan paths: source lies in the target set");
  }
  const int n = g.size();
  std::vector<Role> role(static_cast<std::size_t>(n), Role::free);
  for (int y : Y) role[static_cast<std::size_t>(y)] = Role::sink;
  role[static_cast<std::size_t>(x)] = Role::source;
  SplitNetwork sn = build_split(g, blocked, role, false);
  // The source is not split: flow leaves straight from its out-node.
  sn.net.add_arc(sn.s, out_node(x), kWide);
  for (int y : Y) sn.net.add_arc(in_node(y), out_node(y), 1);
  LocalPaths out;
  const int want = static_cast<int>(k);
  const int got = sn.net.max_flow(sn.s, sn.t, want);
  if (got < want) {
    out.cut = cut_from(sn, n);
    out.cut.erase(std::remove(out.cut.begin(), out.cut.end(), x), out.cut.end());
  }
  for (int i = 0; i < got; ++i) {
    std::vector<int> path{x};
    auto rest = walk_unit(sn.net, sn.s, sn.t);
    path.insert(path.end(), rest.begin(), rest.end());
    shortcut_head(g, path, false);
    out.paths.push_back(std::move(path));
  }
  return out;
}

namespace {

SplitNetwork st_network(const RegionGraph& g, std::span<const char> blocked, int u, int v,
                        bool* direct) {
  const int n = g.size();
  std::vector<Role> role(static_cast<std::size_t>(n), Role::free);
  role[static_cast<std::size_t>(u)] = Role::used;
  role[static_cast<std::size_t>(v)] = Role::used;
  SplitNetwork sn = build_split(g, blocked, role, true);
  auto usable = [&](int w) { return blocked.empty() || !blocked[static_cast<std::size_t>(w)]; };
  sn.net.add_arc(sn.s, out_node(u), kWide);
  *direct = false;
  for (int w : g.neighbors(u)) {
    if (w == v) {
      *direct = true;
      sn.net.add_arc(out_node(u), in_node(v), 1);
    } else if (usable(w)) {
      sn.net.add_arc(out_node(u), in_node(w), kWide);
    }
  }
  for (int w : g.neighbors(v)) {
    if (w != u && usable(w)) sn.net.add_arc(out_node(w), in_node(v), kWide);
  }
  sn.net.add_arc(in_node(v), sn.t, kWide);
  return sn;
}

}  // namespace

LocalPaths local_st_paths(const RegionGraph& g, std::span<const char> blocked, int u, int v,
                          std::size_t k) {
  check_ids(g, std::span<const int>(&u, 1), "st paths");
  check_ids(g, std::span<const int>(&v, 1), "st paths");
  if (u == v) throw std::invalid_argument("st paths: endpoints coincide");
  LocalPaths out;
  SplitNetwork sn = st_network(g, blocked, u, v, &out.direct_edge);
  const int want = static_cast<int>(k);
  const int got = sn.net.max_flow(sn.s, sn.t, want);
  if (got < want) out.cut = cut_from(sn, g.size());
  for (int i = 0; i < got; ++i) {
    std::vector<int> path{u};
    auto rest = walk_unit(sn.net, sn.s, sn.t);
    path.insert(path.end(), rest.begin(), rest.end());
    if (path.back() != v) path.push_back(v);
    shortcut_head(g, path, true);
    shortcut_tail(g, path);
    out.paths.push_back(std::move(path));
  }
  std::sort(out.paths.begin(), out.paths.end());
  return out;
}

int local_connectivity(const RegionGraph& g, int u, int v, int limit) {
  bool direct = false;
  SplitNetwork sn = st_network(g, {}, u, v, &direct);
  return sn.net.max_flow(sn.s, sn.t, limit);
}

namespace {

std::vector<int> ids_of(const RegionGraph& g, const std::vector<Permutation>& vs, const char* what) {
  std::vector<int> out;
  for (const auto& u : vs) {
    const int id = g.index_of(u);
    if (id < 0) {
      throw std::invalid_argument(std::string(what) + ": " + bubblepack::to_string(u) +
                                  " is not in region " + g.spec().to_string());
    }
    out.push_back(id);
  }
  return out;
}

std::vector<Permutation> to_perms(const RegionGraph& g, const std::vector<int>& ids) {
  std::vector<Permutation> out;
  out.reserve(ids.size());
  for (int id : ids) out.push_back(g.vertex(id));
  return out;
}

[[noreturn]] void infeasible(const RegionGraph& g, const LocalPaths& lp, std::size_t k,
                             const char* what) {
  throw PathsInfeasible(std::string(what) + ": only " + std::to_string(lp.paths.size()) + " of " +
                            std::to_string(k) + " disjoint paths exist in " + g.spec().to_string(),
                        lp.paths.size(), k, to_perms(g, lp.cut), lp.direct_edge);
}

PathSet to_pathset(const RegionGraph& g, const LocalPaths& lp, PathContract c,
                   std::vector<Permutation> sources, std::vector<Permutation> sinks) {
  PathSet ps;
  ps.contract = c;
  ps.sources = std::move(sources);
  ps.sinks = std::move(sinks);
  for (const auto& p : lp.paths) ps.paths.push_back(to_perms(g, p));
  return ps;
}

}  // namespace

PathSet disjoint_set_paths(const RegionSpec& r, const TerminalSet& X, const TerminalSet& Y,
                           std::size_t k) {
  if (X.vertices.size() < k || Y.vertices.size() < k) {
    throw std::invalid_argument("disjoint_set_paths: terminal sets smaller than k");
  }
  const RegionGraph g(r);
  const auto xs = ids_of(g, X.vertices, "disjoint_set_paths");
  const auto ys = ids_of(g, Y.vertices, "disjoint_set_paths");
  const LocalPaths lp = local_set_paths(g, {}, xs, ys, k);
  if (lp.paths.size() < k) infeasible(g, lp, k, "disjoint_set_paths");
  return to_pathset(g, lp, PathContract::pairwise_disjoint, X.vertices, Y.vertices);
}

PathSet fan_paths(const RegionSpec& r, const Permutation& x, const TerminalSet& Y, std::size_t k) {
  if (Y.vertices.size() < k) throw std::invalid_argument("fan_paths: target set smaller than k");
  const RegionGraph g(r);
  const int xi = ids_of(g, {x}, "fan_paths").front();
  const auto ys = ids_of(g, Y.vertices, "fan_paths");
  const LocalPaths lp = local_fan_paths(g, {}, xi, ys, k);
  if (lp.paths.size() < k) infeasible(g, lp, k, "fan_paths");
  return to_pathset(g, lp, PathContract::fan, {x}, Y.vertices);
}

PathSet st_internally_disjoint_paths(const RegionSpec& r, const Permutation& u,
                                     const Permutation& v, std::size_t k) {
  const RegionGraph g(r);
  const int ui = ids_of(g, {u}, "st_internally_disjoint_paths").front();
  const int vi = ids_of(g, {v}, "st_internally_disjoint_paths").front();
  const LocalPaths lp = local_st_paths(g, {}, ui, vi, k);
  if (lp.paths.size() < k) infeasible(g, lp, k, "st_internally_disjoint_paths");
  return to_pathset(g, lp, PathContract::internally_disjoint, {u}, {v});
}

int region_connectivity(const RegionSpec& r) {
  const std::uint64_t bound = r.size_bound();
  if (bound > kConnectivityGuard) {
    throw GuardExceeded("exact connectivity of " + r.to_string() + " needs up to " +
                            std::to_string(bound) + " vertices, limit is " +
                            std::to_string(kConnectivityGuard),
                        bound, kConnectivityGuard);
  }
  const RegionGraph g(r);
  const int n = g.size();
  if (n <= 1) return 0;
  int best = n - 1;
  for (int v = 0; v < n; ++v) best = std::min(best, static_cast<int>(g.neighbors(v).size()));
  bool complete = true;
  for (int v = 0; v < n && complete; ++v) complete = static_cast<int>(g.neighbors(v).size()) == n - 1;
  if (complete) return n - 1;
  for (int i = 0; i < n && i <= best; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (adjacent_ids(g, i, j)) continue;
      best = std::min(best, local_connectivity(g, i, j, best));
    }
  }
  return best;
}

SampledConnectivity region_connectivity_sampled(const RegionSpec& r, std::size_t pairs,
                                                std::uint64_t seed, int limit) {
  const RegionGraph g(r);
  if (g.size() < 2) throw std::invalid_argument("sampled connectivity needs two vertices");
  std::mt19937_64 rng(seed);
  SampledConnectivity out;
  out.min_local = limit;
  for (std::size_t p = 0; p < pairs; ++p) {
    const auto ab = distinct_below(rng, static_cast<std::uint64_t>(g.size()), 2);
    const int a = static_cast<int>(ab[0]);
    const int b = static_cast<int>(ab[1]);
    const int c = local_connectivity(g, a, b, limit);
    if (p == 0 || c < out.min_local) {
      out.min_local = std::min(out.min_local, c);
      out.worst_u = g.vertex(a);
      out.worst_v = g.vertex(b);
    }
    ++out.pairs;
  }
  return out;
}

}  // namespace bubblepack
