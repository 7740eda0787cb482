#include <algorithm>

#include "bubblepack/tree_builder.hpp"
#include "build_internal.hpp"
#include "script.hpp"

namespace bubblepack {
namespace detail {

namespace {

Path reversed(Path p) {
  std::reverse(p.begin(), p.end());
  return p;
}

void append(Path& p, const Path& q) {
  for (const auto& v : q) {
    if (p.empty() || p.back() != v) p.push_back(v);
  }
}

void require_free(const Script& s, const Path& p) {
  for (const auto& v : p) {
    if (s.claimed(v)) throw ScriptGap("ladder meets an earlier path at " + to_string(v));
  }
}

}  // namespace

// Arms through x̂_j = x_j[n-2,n-1] for the short paths of a ladder family.
Arm hat_arm(Script& s, const Path& p) {
  const int n = s.n();
  const Permutation nb = next_to(p, s.x());
  const int j = swap_position(s.x(), nb);
  if (j == 0) throw ScriptGap("path does not start at an in-neighbour of x");
  const std::string name = "x_" + std::to_string(j);
  s.anchor(name, "x", {j});
  const std::string hat = "xhat_" + std::to_string(j);
  Arm arm;
  arm.port = s.anchor(hat, name, {n - 2});
  arm.exit = s.anchor(hat + "'", hat, {n - 1});
  arm.body.add(p).add(nb, arm.port);
  return arm;
}

Ladder ladder(Script& s) {
  const int n = s.n();
  const Permutation& x = s.x();
  const Permutation& y = s.y();
  Path px{x};
  px.push_back(s.anchor("x_{n-2}", "x", {n - 2}));
  px.push_back(s.anchor("x_{n-2,1}", "x_{n-2}", {n - 3}));
  px.push_back(s.anchor("x_{n-2,2}", "x_{n-2,1}", {n - 4}));
  px.push_back(s.anchor("x_{n-2,3}", "x_{n-2,2}", {n - 3}));
  px.push_back(s.anchor("xhat_{n-2}", "x_{n-2,3}", {n - 2}));
  const int p2 = x(n - 2);
  const int p3 = x(n - 3);
  const int p4 = x(n - 4);
  const int r2 = y(n - 2);
  const int r3 = y(n - 3);
  Path py{y};
  int target = 0;
  const auto in_p = [&](int r) { return r == p2 || r == p3; };
  if (in_p(r2) && in_p(r3)) {
    py.push_back(s.anchor("y_{n-2}", "y", {n - 2}));
    py.push_back(s.anchor("y_{n-2,1}", "y_{n-2}", {n - 3}));
    py.push_back(s.anchor("y_{n-2,2}", "y_{n-2,1}", {n - 4}));
    py.push_back(s.anchor("y_{n-2,3}", "y_{n-2,2}", {n - 3}));
    py.push_back(s.anchor("yhat_{n-2}", "y_{n-2,3}", {n - 2}));
    target = y(n - 4);
    s.note("P_y: long ladder");
  } else if (in_p(r2)) {
    py.push_back(s.anchor("y_{n-2}", "y", {n - 2}));
    py.push_back(s.anchor("y_{n-2,1}", "y_{n-2}", {n - 3}));
    py.push_back(s.anchor("yhat_{n-2}", "y_{n-2,1}", {n - 2}));
    target = r3;
    s.note("P_y: short ladder");
  } else {
    py.push_back(s.anchor("yhat_{n-2}", "y", {n - 2}));
    target = r2;
    s.note("P_y: single step");
  }
  require_free(s, px);
  require_free(s, py);
  s.claim(px);
  s.claim(py);
  RegionSpec zone = s.suffix({p4, 1});
  if (target != p4) zone = RegionSpec::union_of(zone, s.suffix({target, 1}));
  const Path pxy = s.route(zone, px.back(), py.back());
  s.claim(pxy);
  Ladder out;
  out.path = px;
  append(out.path, pxy);
  append(out.path, reversed(py));
  out.xhat = px.back();
  return out;
}

namespace {

void case21(Attempt& at) {
  Script& s = at.script();
  const int n = s.n();
  at.label("2.1");
  const auto L = s.st(s.parts({1}), s.x(), s.y(), static_cast<std::size_t>(n - 2));
  const auto Q = s.st(s.parts({2}), s.z(), s.w(), static_cast<std::size_t>(n - 2));
  std::vector<Arm> la;
  std::vector<Arm> qa;
  for (const auto& p : L) la.push_back(end_port(s, p, s.x(), "x"));
  for (const auto& p : Q) qa.push_back(end_port(s, p, s.z(), "z"));
  at.trees = relay(s, s.parts_except({1, 2}), la, qa);
}

void case22_small(Attempt& at) {
  Script& s = at.script();
  at.label("2.2");
  const auto& x = s.x();
  const auto& y = s.y();
  const auto& z = s.z();
  const auto& w = s.w();
  if (main_part(s.out(w)) == 1) {
    const Permutation x1 = s.anchor("x_2", "x", {2});
    const Permutation y1 = s.anchor("y_2", "y", {2});
    const auto Q = s.st(s.parts({2}), z, w, 2);
    s.claim(Q[0]);
    s.claim(Q[1]);
    s.claim(x1);
    s.claim(y1);
    const TreeDraft t1 = s.tree(s.parts({3, 4}), {s.out(x1), s.out(y1), s.out(z)});
    TreeDraft a;
    a.add(x, x1).add(x1, s.out(x1)).add(y, y1).add(y1, s.out(y1)).add(t1).add(s.out(z), z).add(Q[0]);
    TreeDraft b;
    b.add(x, y).add(y, w).add(Q[1]);
    at.trees = {a, b};
    return;
  }
  const TreeDraft f1 = s.tree(s.parts({2}), {s.out(x), s.out(y), z, w});
  s.claim(f1);
  const TreeDraft f2 = s.tree(s.parts({1, 3, 4}), {x, y, s.out(z), s.out(w)});
  TreeDraft a = f1;
  a.add(s.out(x), x).add(s.out(y), y);
  TreeDraft b = f2;
  b.add(s.out(w), w).add(s.out(z), z);
  at.trees = {a, b};
}

void case22_large(Attempt& at) {
  Script& s = at.script();
  const int n = s.n();
  const auto& x = s.x();
  const auto& y = s.y();
  const bool adj = s.adjacent(x, y);
  at.label(adj ? "2.2.2" : "2.2.1");
  const auto L = s.st(s.suffix({2, 1}), x, y, static_cast<std::size_t>(n - 3));
  std::vector<Arm> la;
  for (const auto& p : L) {
    s.claim(p);
    if (p.size() == 2) continue;  // the edge xy
    la.push_back(hat_arm(s, p));
    s.claim(la.back().port);
  }
  const Ladder ld = ladder(s);
  la.push_back({TreeDraft{}.add(ld.path), ld.xhat, s.anchor("xhat_{n-2}'", "xhat_{n-2}", {n - 1})});
  const auto Q = s.st(s.parts({2}), s.z(), s.w(), static_cast<std::size_t>(n - 2));
  std::vector<Arm> qa;
  for (const auto& p : Q) qa.push_back(end_port(s, p, s.z(), "z"));
  if (!adj) {
    at.trees = relay(s, s.parts_except({1, 2}), la, qa);
    return;
  }
  // Closed neighbourhood of x' inside V_2 against the (z,w)-paths.
  const Permutation xo = s.anchor("x'", "x", {n - 1});
  std::vector<Permutation> around{xo};
  for (int i = 1; i <= n - 2; ++i) around.push_back(Script::sw(xo, i));
  int hit_path = -1;
  Permutation hit;
  for (const auto& v : around) {
    for (std::size_t q = 0; q < Q.size() && hit_path < 0; ++q) {
      if (std::find(Q[q].begin(), Q[q].end(), v) != Q[q].end()) {
        hit_path = static_cast<int>(q);
        hit = v;
      }
    }
    if (hit_path >= 0) break;
  }
  if (hit_path < 0) {
    const Permutation h = s.anchor("xhat_1", "x'", {n - 2});
    Arm first;
    first.body.add(y, x).add(x, xo).add(xo, h);
    first.port = h;
    first.exit = s.anchor("xhat_1'", "xhat_1", {n - 1});
    la.insert(la.begin(), first);
    at.trees = relay(s, s.parts_except({1, 2}), la, qa);
    return;
  }
  s.note("x' meets a (z,w)-path");
  TreeDraft t1;
  t1.add(Q[static_cast<std::size_t>(hit_path)]).add(hit, xo).add(x, xo).add(x, y);
  s.claim(Q[static_cast<std::size_t>(hit_path)]);
  s.claim(xo);
  qa.erase(qa.begin() + hit_path);
  at.trees.push_back(t1);
  auto rest = relay(s, s.parts_except({1, 2}), la, qa);
  at.trees.insert(at.trees.end(), rest.begin(), rest.end());
}

void case23_small(Attempt& at) {
  Script& s = at.script();
  at.label("2.3");
  const auto& x = s.x();
  const auto& y = s.y();
  const auto& z = s.z();
  const auto& w = s.w();
  const Permutation x1 = s.anchor("x_2", "x", {2});
  const Permutation y1 = s.anchor("y_2", "y", {2});
  const Permutation z1 = s.anchor("z_2", "z", {2});
  s.claim(x1);
  s.claim(y1);
  s.claim(z1);
  const TreeDraft t1 = s.tree(s.parts({3, 4}), {s.out(x1), s.out(y1), s.out(z1)});
  TreeDraft a;
  a.add(x, x1).add(x1, s.out(x1)).add(y, y1).add(y1, s.out(y1)).add(t1).add(s.out(z1), z1).add(z1, z).add(z, w);
  TreeDraft b;
  b.add(z, x).add(x, y).add(y, w);
  at.trees = {a, b};
}

}  // namespace

TreePacking run_case2(CasePlan& plan) {
  Attempt at(plan, "2");
  return at.run([&](Attempt& a) {
    const int n = plan.n;
    const BubbleGraph g(n);
    std::array<Permutation, 2> P{plan.x, plan.y};
    std::array<Permutation, 2> Q{plan.z, plan.w};
    int A = main_part(plan.x);
    int B = main_part(plan.z);
    const auto outpart = [&](const Permutation& u) { return main_part(g.out_neighbor(u)); };
    const auto crosses = [&](const std::array<Permutation, 2>& pair, int other) {
      return outpart(pair[0]) == other && outpart(pair[1]) == other;
    };
    bool pc = crosses(P, B);
    bool qc = crosses(Q, A);
    if (qc && !pc) {
      std::swap(P, Q);
      std::swap(A, B);
      std::swap(pc, qc);
    }
    // Within a pair, lead with a vertex whose out-neighbour avoids the other part.
    const auto lead = [&](std::array<Permutation, 2>& pair, int other) {
      if (outpart(pair[0]) == other && outpart(pair[1]) != other) std::swap(pair[0], pair[1]);
    };
    if (!pc && !qc) {
      lead(P, B);
      lead(Q, A);
      a.open(frame(n, {A, B}), {P[0], P[1], Q[0], Q[1]});
      case21(a);
      return;
    }
    if (pc && !qc) {
      lead(Q, A);
      if (n == 4) {
        if (outpart(Q[1]) == A && g.out_neighbor(Q[1]) == P[0]) std::swap(P[0], P[1]);
        a.open(frame(n, {A, B}), {P[0], P[1], Q[0], Q[1]});
        case22_small(a);
      } else {
        a.open(frame(n, {A, B}), {P[0], P[1], Q[0], Q[1]});
        case22_large(a);
      }
      return;
    }
    if (n == 4) {
      if (g.out_neighbor(P[0]) != Q[0]) std::swap(Q[0], Q[1]);
      a.open(frame(n, {A, B}), {P[0], P[1], Q[0], Q[1]});
      case23_small(a);
      return;
    }
    a.open(frame(n, {A, B}), {P[0], P[1], Q[0], Q[1]});
    a.label("2.3");
    throw ScriptGap("case 2.3 for n >= 5 is only sketched");
  });
}

}  // namespace detail

TreePacking build_case2(const CasePlan& plan) {
  CasePlan copy = plan;
  return detail::run_case2(copy);
}

}  // namespace bubblepack
