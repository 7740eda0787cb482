#include "bubblepack/verifier.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace bubblepack {

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::not_an_edge:
      return "not-an-edge";
    case ViolationKind::not_a_tree:
      return "not-a-tree";
    case ViolationKind::terminal_missing:
      return "terminal-missing";
    case ViolationKind::edge_overlap:
      return "edge-overlap";
    case ViolationKind::vertex_overlap_beyond_s:
      return "vertex-overlap-beyond-S";
    case ViolationKind::contract_breach:
      return "contract-breach";
  }
  return "?";
}

std::string VerifyReport::to_text() const {
  std::ostringstream out;
  out << (ok ? "ok" : "FAILED") << " (" << violations.size() << " violations, "
      << stats.vertices_touched << " vertices touched)\n";
  for (const auto& v : violations) {
    out << "  " << to_string(v.kind);
    if (v.item >= 0) out << " #" << v.item;
    if (v.other >= 0) out << "/#" << v.other;
    if (!v.detail.empty()) out << ": " << v.detail;
    if (!v.witness.empty()) {
      out << " [";
      for (std::size_t k = 0; k < v.witness.size(); ++k) {
        if (k) out << ' ';
        out << to_string(v.witness[k]);
      }
      out << ']';
    }
    out << '\n';
  }
  return out.str();
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(a)] = b;
    return true;
  }
};

bool valid_edge(const BubbleGraph& g, const Permutation& a, const Permutation& b) {
  return g.contains(a) && g.contains(b) && g.adjacent(a, b);
}

template <class T>
std::vector<T> sorted_intersection(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

VerifyReport verify_packing(const BubbleGraph& g, const std::vector<Permutation>& S,
                            const TreePacking& p) {
  VerifyReport report;
  std::vector<Permutation> terminals = S;
  std::sort(terminals.begin(), terminals.end());
  terminals.erase(std::unique(terminals.begin(), terminals.end()), terminals.end());

  std::vector<std::vector<Permutation>> vertex_sets;
  std::vector<std::vector<Edge>> edge_sets;
  std::vector<Permutation> touched;

  for (std::size_t t = 0; t < p.trees.size(); ++t) {
    const auto& tree = p.trees[t];
    const int ti = static_cast<int>(t);
    report.stats.sizes.push_back(tree.edges.size());

    std::vector<Edge> edges;
    for (const auto& e : tree.edges) {
      const Edge norm(e.a, e.b);
      if (!valid_edge(g, norm.a, norm.b)) {
        report.add({ViolationKind::not_an_edge, ti, -1, {norm.a, norm.b},
                    "pair is not adjacent in B" + std::to_string(g.arity())});
      }
      edges.push_back(norm);
    }
    std::sort(edges.begin(), edges.end());
    for (std::size_t k = 1; k < edges.size(); ++k) {
      if (edges[k] == edges[k - 1]) {
        report.add({ViolationKind::not_a_tree, ti, -1, {edges[k].a, edges[k].b}, "edge listed twice"});
      }
    }
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::vector<Permutation> verts;
    for (const auto& e : edges) {
      verts.push_back(e.a);
      verts.push_back(e.b);
    }
    if (edges.empty() && terminals.size() == 1) verts = terminals;
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());

    UnionFind uf(verts.size());
    auto id = [&](const Permutation& u) {
      return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), u) - verts.begin());
    };
    for (const auto& e : edges) {
      if (!uf.unite(id(e.a), id(e.b))) {
        report.add({ViolationKind::not_a_tree, ti, -1, {e.a, e.b}, "edge closes a cycle"});
      }
    }
    if (verts.empty()) {
      report.add({ViolationKind::not_a_tree, ti, -1, {}, "tree has no vertices"});
    } else {
      const int root = uf.find(0);
      for (std::size_t k = 1; k < verts.size(); ++k) {
        if (uf.find(static_cast<int>(k)) != root) {
          report.add({ViolationKind::not_a_tree, ti, -1, {verts[0], verts[k]}, "tree is disconnected"});
          break;
        }
      }
    }
    for (const auto& s : terminals) {
      if (!std::binary_search(verts.begin(), verts.end(), s)) {
        report.add({ViolationKind::terminal_missing, ti, -1, {s}, "terminal not spanned"});
      }
    }
    touched.insert(touched.end(), verts.begin(), verts.end());
    vertex_sets.push_back(std::move(verts));
    edge_sets.push_back(std::move(edges));
  }

  for (std::size_t i = 0; i < p.trees.size(); ++i) {
    for (std::size_t j = i + 1; j < p.trees.size(); ++j) {
      const auto shared_edges = sorted_intersection(edge_sets[i], edge_sets[j]);
      for (const auto& e : shared_edges) {
        report.add({ViolationKind::edge_overlap, static_cast<int>(i), static_cast<int>(j), {e.a, e.b},
                    "edge used by two trees"});
      }
      for (const auto& v : sorted_intersection(vertex_sets[i], vertex_sets[j])) {
        if (!std::binary_search(terminals.begin(), terminals.end(), v)) {
          report.add({ViolationKind::vertex_overlap_beyond_s, static_cast<int>(i),
                      static_cast<int>(j), {v}, "non-terminal vertex shared"});
        }
      }
    }
  }

  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  report.stats.vertices_touched = touched.size();
  return report;
}

VerifyReport verify_paths(const BubbleGraph& g, const RegionSpec& r, const PathSet& ps) {
  VerifyReport report;
  std::vector<Permutation> sources = ps.sources;
  std::vector<Permutation> sinks = ps.sinks;
  std::sort(sources.begin(), sources.end());
  std::sort(sinks.begin(), sinks.end());
  auto in = [](const std::vector<Permutation>& set, const Permutation& u) {
    return std::binary_search(set.begin(), set.end(), u);
  };

  // Vertex -> first path using it as a non-shared vertex.
  std::map<Permutation, int> owner;
  std::map<Permutation, int> sink_owner;
  std::set<Permutation> touched;
  int direct_edges = 0;

  for (std::size_t k = 0; k < ps.paths.size(); ++k) {
    const auto& path = ps.paths[k];
    const int pi = static_cast<int>(k);
    report.stats.sizes.push_back(path.empty() ? 0 : path.size() - 1);
    if (path.empty()) {
      report.add({ViolationKind::contract_breach, pi, -1, {}, "empty path"});
      continue;
    }
    for (const auto& u : path) {
      touched.insert(u);
      if (!r.contains(u)) {
        report.add({ViolationKind::not_an_edge, pi, -1, {u}, "vertex outside region " + r.to_string()});
      }
    }
    for (std::size_t s = 1; s < path.size(); ++s) {
      if (!valid_edge(g, path[s - 1], path[s])) {
        report.add({ViolationKind::not_an_edge, pi, -1, {path[s - 1], path[s]}, "consecutive pair is not an edge"});
      }
    }
    std::vector<Permutation> sorted = path;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      report.add({ViolationKind::contract_breach, pi, -1, {*std::adjacent_find(sorted.begin(), sorted.end())},
                  "path is not simple"});
    }

    const Permutation& head = path.front();
    const Permutation& tail = path.back();
    if (!in(sources, head)) {
      report.add({ViolationKind::contract_breach, pi, -1, {head}, "path does not start at a source"});
    }
    if (!in(sinks, tail)) {
      report.add({ViolationKind::contract_breach, pi, -1, {tail}, "path does not end at a sink"});
    }
    if (ps.contract != PathContract::pairwise_disjoint && path.size() < 2) {
      report.add({ViolationKind::contract_breach, pi, -1, {head}, "zero-length path under a two-ended contract"});
    }

    std::size_t first = 0;
    std::size_t last = path.size();
    switch (ps.contract) {
      case PathContract::pairwise_disjoint:
        break;
      case PathContract::internally_disjoint:
        first = 1;
        last = path.size() - 1;
        if (path.size() == 2) ++direct_edges;
        break;
      case PathContract::fan:
        first = 1;
        last = path.size() - 1;
        if (path.size() >= 2) {
          auto [it, fresh] = sink_owner.emplace(tail, pi);
          if (!fresh) {
            report.add({ViolationKind::contract_breach, it->second, pi, {tail}, "two fan paths end at one target"});
          }
        }
        break;
    }
    for (std::size_t s = 1; s + 1 < path.size(); ++s) {
      if (in(sources, path[s]) || in(sinks, path[s])) {
        report.add({ViolationKind::contract_breach, pi, -1, {path[s]}, "internal vertex lies in a terminal set"});
      }
    }
    for (std::size_t s = first; s < last; ++s) {
      auto [it, fresh] = owner.emplace(path[s], pi);
      if (!fresh && it->second != pi) {
        report.add({ViolationKind::contract_breach, it->second, pi, {path[s]}, "paths share a vertex"});
      }
    }
  }
  if (direct_edges > 1) {
    report.add({ViolationKind::contract_breach, -1, -1, {}, "direct edge listed more than once"});
  }
  report.stats.vertices_touched = touched.size();
  return report;
}

}  // namespace bubblepack
