#include <algorithm>

#include "bubblepack/tree_builder.hpp"
#include "build_internal.hpp"
#include "script.hpp"

namespace bubblepack {
namespace detail {

namespace {

bool on(const Path& p, const Permutation& v) { return std::find(p.begin(), p.end(), v) != p.end(); }

bool touches(const TreeDraft& t, const Permutation& v) {
  return std::any_of(t.edges.begin(), t.edges.end(), [&](const Edge& e) { return e.a == v || e.b == v; });
}

// The arc of the 6-cycle V_1 from a to b avoiding c.
Path arc(Script& s, const Permutation& a, const Permutation& b, const Permutation& c) {
  for (const auto& p : s.st(s.parts({1}), a, b, 2)) {
    if (!on(p, c)) return p;
  }
  throw ScriptGap("no arc avoids the third terminal");
}

void small(Attempt& at) {
  Script& s = at.script();
  at.label("5.n4");
  const auto& x = s.x();
  const auto& y = s.y();
  const auto& z = s.z();
  const auto& w = s.w();
  const auto rest = s.parts_except({1});
  const Path pxy = arc(s, x, y, z);
  const Path pxz = arc(s, x, z, y);
  const Path pyz = arc(s, y, z, x);
  const Permutation wo = s.out(w);
  if (main_part(wo) == 1) {
    if (!s.is_terminal(wo)) {
      s.note("w' in V_1 off S");
      TreeDraft a = s.tree(s.parts({1}), {x, y, z, wo});
      a.add(wo, w);
      s.claim(a);
      TreeDraft b = s.tree(rest, {w, s.out(x), s.out(y), s.out(z)});
      b.add(s.out(x), x).add(s.out(y), y).add(s.out(z), z);
      at.trees = {a, b};
      return;
    }
    s.note("w' = x");
    TreeDraft a;
    a.add(w, x).add(pxy).add(pyz);
    s.claim(a);
    s.claim(pxz);
    TreeDraft b = s.tree(rest, {s.out(y), s.out(z), w});
    b.add(pxz).add(z, s.out(z)).add(s.out(y), y);
    at.trees = {a, b};
    return;
  }
  // x' in V_3 and x_1 = x[1,2] on P_xy.
  const Permutation xo = s.anchor("x'", "x", {3});
  const Permutation x1 = s.anchor("x_1", "x", {1});
  const Permutation x1o = s.anchor("x_1'", "x_1", {3});
  if (main_part(xo) != 3 || !on(pxy, x1)) throw ScriptGap("role frame for n = 4 misaligned");
  s.claim(pxy);
  s.claim(pxz);
  s.claim(pyz);
  const Permutation zo = s.out(z);
  TreeDraft base1;
  base1.add(pyz).add(pxz).add(x, xo);
  TreeDraft base2;
  base2.add(pxy).add(x1, x1o);
  if (main_part(zo) == 2) {
    s.note("z' in V_2");
    const auto w1 = s.pick(s.parts({2}), 1, [&](const Permutation& v) {
      return v != zo && main_part(s.out(v)) == 3;
    })[0];
    const auto L = s.fan(s.parts({2}), w, {w1, zo});
    s.claim_all(L);
    const Permutation w1o = s.out(w1);
    const auto Q = s.link(s.parts({3, 4}), {wo, w1o}, {xo, x1o});
    TreeDraft a = base1;
    TreeDraft b = base2;
    if (Q.at(w1o).back() == xo) {
      a.add(Q.at(w1o)).add(w1o, w1).add(L.at(w1));
      b.add(Q.at(wo)).add(wo, w).add(L.at(zo)).add(zo, z);
    } else {
      a.add(Q.at(wo)).add(wo, w);
      b.add(Q.at(w1o)).add(w1o, w1).add(L.at(w1)).add(L.at(zo)).add(zo, z);
    }
    at.trees = {a, b};
    return;
  }
  if (main_part(zo) == 4 && main_part(wo) == 4) {
    s.note("z', w' in V_4");
    const auto ws = s.pick(s.parts({2}), 2, [&](const Permutation& v) { return main_part(s.out(v)) == 3; });
    const auto L = s.fan(s.parts({2}), w, ws);
    s.claim_all(L);
    const Permutation w1o = s.out(ws[0]);
    const Permutation w2o = s.out(ws[1]);
    const auto Q = s.link(s.parts({3}), {xo, x1o}, {w1o, w2o});
    s.claim_all(Q);
    const Path K = s.route(s.parts({4}), wo, zo);
    const Path& q1 = Q.at(xo);
    const Path& q2 = Q.at(x1o);
    const auto arm_of = [&](const Permutation& end) { return end == w1o ? ws[0] : ws[1]; };
    TreeDraft a = base1;
    a.add(q1).add(q1.back(), arm_of(q1.back())).add(L.at(arm_of(q1.back())));
    TreeDraft b = base2;
    b.add(q2).add(q2.back(), arm_of(q2.back())).add(L.at(arm_of(q2.back()))).add(w, wo).add(K).add(zo, z);
    at.trees = {a, b};
    return;
  }
  throw ScriptGap("n = 4 branch with z' or w' in V_3 is only sketched");
}

// Shared part of the three-part cases: n-3 trees through x's in-neighbours
// plus the x-alone strand leaving through x'.
struct Hub {
  std::vector<Arm> cores;  // port x_j, exit x_j'
  Arm alone;               // port x, exit x'
};

Hub hub_cores(Script& s) {
  const int n = s.n();
  const auto& x = s.x();
  const auto& y = s.y();
  const auto& z = s.z();
  const int p = x(n - 1);
  const int q = y(n - 1);
  if (x(n - 2) == q) throw ScriptGap("x_{n-2} lies in the sub-part of y");
  const RegionSpec inner = RegionSpec::union_of(s.suffix({p, 1}), s.suffix({q, 1}));
  const auto L = s.st(inner, x, y, static_cast<std::size_t>(n - 3));
  for (const auto& path : L) s.claim(path);
  std::vector<int> js;
  std::vector<Permutation> targets;
  const Permutation xn2 = s.anchor("x_" + std::to_string(n - 2), "x", {n - 2});
  for (const auto& path : L) {
    const int j = swap_position(x, next_to(path, x));
    if (j < 1 || j > n - 3) throw ScriptGap("an (x,y)-path leaves V^1_p at once");
    js.push_back(j);
    const std::string name = "x_" + std::to_string(j);
    s.anchor(name, "x", {j});
    targets.push_back(j == n - 3 ? xn2 : s.anchor("xhat_" + std::to_string(j), name, {n - 2}));
  }
  const auto Q = s.fan(RegionSpec::difference(s.parts({1}), inner), z, targets, TerminalRole::Z);
  s.claim_all(Q);
  Hub h;
  for (std::size_t i = 0; i < L.size(); ++i) {
    const std::string name = "x_" + std::to_string(js[i]);
    Arm a;
    a.port = s.at(name);
    a.exit = s.anchor(name + "'", name, {n - 1});
    a.body.add(L[i]).add(js[i] == n - 3 ? x : a.port, targets[i]).add(Q.at(targets[i]));
    s.claim(a.body);
    h.cores.push_back(std::move(a));
  }
  h.alone.port = x;
  h.alone.exit = s.anchor("x'", "x", {n - 1});
  return h;
}

// w' or its stand-in: the strand `lead` from w to `tip`, which leaves
// through tip'.
struct Tip {
  TreeDraft lead;
  Permutation tip;
  bool clean = true;
  Permutation touch;  // first vertex of N[w'] on a core when not clean
};

Tip w_tip(Script& s, const std::vector<Arm>& cores) {
  const int n = s.n();
  const auto& w = s.w();
  Tip t;
  const Permutation wo = s.anchor("w'", "w", {n - 1});
  if (main_part(wo) != 1) {
    t.tip = w;
    return t;
  }
  std::vector<Permutation> around{wo};
  for (int i = 1; i <= n - 2; ++i) around.push_back(Script::sw(wo, i));
  for (const auto& v : around) {
    for (const auto& c : cores) {
      if (touches(c.body, v)) {
        t.clean = false;
        t.touch = v;
        return t;
      }
    }
  }
  t.tip = s.anchor("what", "w'", {n - 2});
  t.lead.add(w, wo).add(wo, t.tip);
  return t;
}

void finish_alone(Script& s, std::vector<TreeDraft>& trees, std::size_t alone, TreeDraft extra,
                  const RegionSpec& r, const Permutation& hook) {
  for (const auto& t : trees) s.claim(t);
  s.claim(extra);
  const TreeDraft T = s.tree(r, {hook, s.out(s.y()), s.out(s.z())});
  extra.add(T).add(s.out(s.y()), s.y()).add(s.out(s.z()), s.z());
  trees[alone].add(extra);
}

// w-side when x' avoids V_2: strands from w meet the x-exits inside V_p.
void spread(Attempt& at, const Hub& h) {
  Script& s = at.script();
  const int n = s.n();
  const int p = main_part(h.alone.exit);
  const auto& w = s.w();
  const Tip t = w_tip(s, h.cores);
  std::vector<Arm> xs = h.cores;
  TreeDraft touched;
  if (!t.clean) {
    s.note("N[w'] meets a core");
    const Permutation wo = s.at("w'");
    auto it = std::find_if(xs.begin(), xs.end(), [&](const Arm& c) { return touches(c.body, t.touch); });
    touched = it->body;
    touched.add(t.touch, wo).add(wo, w);
    xs.erase(it);
    s.claim(touched);
    s.claim(wo);
  } else {
    s.claim(t.lead);
  }
  xs.push_back(h.alone);
  const auto to_p = [&](const Permutation& v) { return main_part(s.out(v)) == p; };
  const auto to_far = [&](const Permutation& v) {
    const int m = main_part(s.out(v));
    return m != 1 && m != p;
  };
  const RegionSpec far = s.parts_except({1, p});
  if (t.clean && main_part(s.out(t.tip)) != p) {
    s.note(t.tip == w ? "(i) w' off V_1 and V_p" : "(iii) through w^ with w^' off V_p");
    const auto ws = s.pick(s.parts({2}), static_cast<std::size_t>(n - 2), to_p);
    const auto H = s.fan(s.parts({2}), w, ws, TerminalRole::W);
    std::vector<Arm> wa;
    for (const auto& v : ws) wa.push_back({TreeDraft{}.add(H.at(v)), v, s.out(v)});
    auto trees = relay(s, s.parts({p}), xs, wa);
    TreeDraft extra = t.lead;
    extra.add(t.tip, s.out(t.tip));
    finish_alone(s, trees, trees.size() - 1, extra, far, s.out(t.tip));
    at.trees = trees;
    return;
  }
  s.note(t.clean ? "(ii) w-strand exits into V_p" : "(iii) spare strand through w_{n-2}");
  const std::size_t count = static_cast<std::size_t>(n - 3);
  const auto ws = s.pick(s.parts({2}), count, to_p);
  for (const auto& v : ws) s.claim(v);
  const Permutation spare = s.pick(s.parts({2}), 1, to_far)[0];
  std::vector<Permutation> ends = ws;
  ends.push_back(spare);
  const auto H = s.fan(s.parts({2}), w, ends, TerminalRole::W);
  s.claim_all(H);
  std::vector<Arm> wa;
  for (const auto& v : ws) wa.push_back({TreeDraft{}.add(H.at(v)), v, s.out(v)});
  if (t.clean) wa.push_back({t.lead, t.tip, s.out(t.tip)});
  auto trees = relay(s, s.parts({p}), xs, wa);
  TreeDraft extra;
  extra.add(H.at(spare)).add(spare, s.out(spare));
  finish_alone(s, trees, trees.size() - 1, extra, far, s.out(spare));
  if (!t.clean) trees.push_back(touched);
  at.trees = trees;
}

// w-side when the x-exits lie in V_2: a fan from w collects them.
void gather(Attempt& at, const Hub& h) {
  Script& s = at.script();
  const auto& w = s.w();
  const Tip t = w_tip(s, h.cores);
  std::vector<Arm> xs = h.cores;
  TreeDraft touched;
  if (!t.clean) {
    s.note("N[w'] meets a core");
    const Permutation wo = s.at("w'");
    auto it = std::find_if(xs.begin(), xs.end(), [&](const Arm& c) { return touches(c.body, t.touch); });
    touched = it->body;
    touched.add(t.touch, wo).add(wo, w);
    xs.erase(it);
    s.claim(touched);
    s.claim(wo);
  } else {
    s.claim(t.lead);
  }
  xs.push_back(h.alone);
  std::vector<Permutation> X;
  for (const auto& a : xs) {
    s.claim(a.port);
    s.claim(a.exit);
    X.push_back(a.exit);
  }
  Permutation hook;
  TreeDraft extra = t.lead;
  std::vector<Permutation> ends = X;
  if (t.clean) {
    hook = s.out(t.tip);
    extra.add(t.tip, hook);
  } else {
    const Permutation spare =
        s.pick(s.parts({2}), 1, [&](const Permutation& v) { return main_part(s.out(v)) != 1; })[0];
    ends.push_back(spare);
    hook = s.out(spare);
  }
  const auto H = s.fan(s.parts({2}), w, ends, TerminalRole::X);
  s.claim_all(H);
  if (!t.clean) extra.add(H.at(ends.back())).add(ends.back(), hook);
  std::vector<TreeDraft> trees;
  for (const auto& a : xs) {
    TreeDraft d = a.body;
    d.add(a.port, a.exit).add(H.at(a.exit));
    trees.push_back(std::move(d));
  }
  finish_alone(s, trees, trees.size() - 1, extra, s.parts_except({1, 2}), hook);
  if (!t.clean) trees.push_back(touched);
  at.trees = trees;
}

void case51(Attempt& at, const std::string& label) {
  at.label(label);
  const Hub h = hub_cores(at.script());
  if (main_part(h.alone.exit) == 2) {
    gather(at, h);
  } else {
    spread(at, h);
  }
}

// Cores of the two-part case: L_i + y_i yhat_i + Q_i joined to x through the
// in-neighbour of x on Q_i.
Hub pair_cores(Script& s, bool x_side) {
  const int n = s.n();
  const auto& x = s.x();
  const auto& y = s.y();
  const auto& z = s.z();
  const int p = x(n - 1);
  const int q = y(n - 1);
  const auto L = s.st(s.suffix({q, 1}), y, z, static_cast<std::size_t>(n - 3));
  for (const auto& path : L) s.claim(path);
  std::vector<Permutation> hats;
  std::vector<std::string> names;
  for (const auto& path : L) {
    const int j = swap_position(y, next_to(path, y));
    if (j < 1 || j > n - 3) throw ScriptGap("a (y,z)-path leaves V^1_q at once");
    const std::string name = "y_" + std::to_string(j);
    s.anchor(name, "y", {j});
    names.push_back(std::to_string(j));
    hats.push_back(s.anchor("yhat_" + std::to_string(j), name, {n - 2}));
  }
  const RegionSpec zone = RegionSpec::union_of(
      s.suffix({p, 1}), RegionSpec::union_of(s.suffix({y(n - 2), 1}), s.suffix({y(n - 3), 1})));
  if (x_side) {
    const Permutation xn2 = Script::sw(x, n - 2);
    if (std::find(hats.begin(), hats.end(), xn2) != hats.end()) throw ScriptGap("x_{n-2} is a target");
    s.claim(xn2);
  }
  const auto Q = s.fan(zone, x, hats, TerminalRole::Y);
  s.claim_all(Q);
  Hub h;
  for (std::size_t i = 0; i < L.size(); ++i) {
    Arm a;
    a.body.add(L[i]).add(s.at("y_" + names[i]), hats[i]).add(Q.at(hats[i]));
    if (x_side) {
      const Arm e = end_port(s, Q.at(hats[i]), x, "x");
      if (e.port == x) throw ScriptGap("a (x,Y)-path leaves x through x_{n-2}");
      a.port = e.port;
      a.exit = e.exit;
    } else {
      a.port = hats[i];
      a.exit = s.anchor("yhat_" + names[i] + "'", "yhat_" + names[i], {n - 1});
    }
    s.claim(a.body);
    h.cores.push_back(std::move(a));
  }
  h.alone = {TreeDraft{}, x, s.anchor("x'", "x", {n - 1})};
  return h;
}

void case52(Attempt& at) {
  Script& s = at.script();
  const int n = s.n();
  const auto& x = s.x();
  const auto& y = s.y();
  const auto& z = s.z();
  const auto& w = s.w();
  const int p = x(n - 1);
  const int q = y(n - 1);
  const int l = w(n - 1);
  if (q != 2) {
    at.label("5.2");
    s.note(p == 2 ? "x-exits in V_2" : "no out-neighbour in V_2");
    const Hub h = pair_cores(s, true);
    if (p == 2) {
      gather(at, h);
    } else {
      spread(at, h);
    }
    return;
  }
  at.label(l == 1 ? "5.2.2" : "5.2.1");
  if (l == 1) throw ScriptGap("case 5.2.2 is not scripted");
  const Hub h = pair_cores(s, false);
  std::vector<Arm> xs = h.cores;
  xs.push_back(h.alone);
  const RegionSpec sub = s.suffix({l, 2});
  const auto ws = s.pick(sub, static_cast<std::size_t>(n - 3), [](const Permutation&) { return true; });
  const auto H = s.fan(sub, w, ws, TerminalRole::W);
  std::vector<Arm> wa;
  for (const auto& v : ws) wa.push_back({TreeDraft{}.add(H.at(v)), v, s.out(v)});
  wa.push_back({TreeDraft{}, w, s.anchor("w'", "w", {n - 1})});
  auto trees = relay(s, s.parts_except({1, 2}), xs, wa);
  for (const auto& t : trees) s.claim(t);
  const Permutation wh = s.anchor("what", "w", {n - 2});
  s.claim(wh);
  const TreeDraft star = s.tree(RegionSpec::difference(s.parts({2}), sub), {wh, s.out(y), s.out(z)});
  trees.back().add(w, wh).add(star).add(s.out(y), y).add(s.out(z), z);
  at.trees = trees;
}

void case531(Attempt& at) {
  Script& s = at.script();
  const int n = s.n();
  const auto& x = s.x();
  const auto& y = s.y();
  const auto& z = s.z();
  const auto& w = s.w();
  at.label("5.3.1");
  const int p = x(n - 1);
  if (p != 2) throw ScriptGap("x', y', z' off V_2; only sketched");
  const Permutation wo = s.anchor("w'", "w", {n - 1});
  if (main_part(wo) != 1) throw ScriptGap("w' off V_1; only sketched");
  std::vector<Permutation> around{w};
  for (int i = 1; i <= n - 2; ++i) around.push_back(Script::sw(w, i));
  for (const auto& t : {s.out(x), s.out(y), s.out(z)}) {
    if (std::find(around.begin(), around.end(), t) != around.end()) {
      throw ScriptGap("an out-neighbour of x, y, z lies in N[w]; only sketched");
    }
  }
  const auto Ts = s.steiner(s.suffix({p, 1}), {x, y, z}, n - 4);
  std::vector<Arm> xs;
  for (std::size_t i = 0; i < Ts.size(); ++i) {
    Permutation xi;
    bool found = false;
    for (int j = 1; j <= n - 3 && !found; ++j) {
      if (touches(Ts[i], Script::sw(x, j))) {
        for (const auto& e : Ts[i].edges) {
          if ((e.a == x && e.b == Script::sw(x, j)) || (e.b == x && e.a == Script::sw(x, j))) {
            xi = s.anchor("x_" + std::to_string(j), "x", {j});
            found = true;
          }
        }
      }
    }
    if (!found) throw ScriptGap("a k3 tree misses the in-neighbours of x");
    s.claim(Ts[i]);
    Arm a;
    a.port = Script::sw(xi, n - 2);
    a.exit = s.out(a.port);
    a.body.add(Ts[i]).add(xi, a.port);
    s.claim(a.port);
    xs.push_back(std::move(a));
  }
  const Permutation xh = s.anchor("xhat", "x", {n - 2});
  const Permutation yh = s.anchor("yhat", "y", {n - 2});
  const Permutation zh = s.anchor("zhat", "z", {n - 2});
  const TreeDraft t3 = s.tree(RegionSpec::difference(s.parts({1}), s.suffix({p, 1})), {xh, yh, zh});
  Arm last;
  last.body.add(t3).add(x, xh).add(y, yh).add(z, zh);
  last.port = xh;
  last.exit = s.anchor("xhat'", "xhat", {n - 1});
  s.claim(last.body);
  xs.push_back(std::move(last));
  std::vector<Arm> wa;
  for (int i = 1; i <= n - 4; ++i) {
    const std::string name = "w_" + std::to_string(i);
    const Permutation wi = s.anchor(name, "w", {i});
    const Permutation wh = s.anchor("what_" + std::to_string(i), name, {n - 2});
    wa.push_back({TreeDraft{}.add(w, wi).add(wi, wh), wh, s.out(wh)});
  }
  const Permutation wh = s.anchor("what", "w", {n - 2});
  wa.push_back({TreeDraft{}.add(w, wh), wh, s.anchor("what'", "what", {n - 1})});
  auto trees = relay(s, s.parts_except({1, 2}), xs, wa);
  for (const auto& t : trees) s.claim(t);
  TreeDraft top = s.tree(s.suffix({1, 2}), {w, s.out(x), s.out(y), s.out(z)});
  top.add(x, s.out(x)).add(y, s.out(y)).add(z, s.out(z));
  trees.push_back(top);
  at.trees = trees;
}

}  // namespace

TreePacking run_case5(CasePlan& plan) {
  Attempt at(plan, "5");
  return at.run([&](Attempt& a) {
    const int n = plan.n;
    const BubbleGraph g(n);
    const std::array<Permutation, 3> T{plan.x, plan.y, plan.z};
    const Permutation& w = plan.w;
    const int A = main_part(plan.x);
    const int B = main_part(w);
    const auto outpart = [&](const Permutation& u) { return main_part(g.out_neighbor(u)); };
    if (n == 4) {
      std::vector<std::pair<Permutation, Roles>> opts;
      if (outpart(w) == A) {
        const Permutation wo = g.out_neighbor(w);
        Roles r{T[0], T[1], T[2], w};
        for (int i = 0; i < 3; ++i) {
          if (T[static_cast<std::size_t>(i)] == wo) {
            r = {T[static_cast<std::size_t>(i)], T[static_cast<std::size_t>((i + 1) % 3)],
                 T[static_cast<std::size_t>((i + 2) % 3)], w};
          }
        }
        opts.emplace_back(frame(n, {A, B}), r);
      } else {
        for (int i = 0; i < 3; ++i) {
          const Permutation& x = T[static_cast<std::size_t>(i)];
          if (outpart(x) == B) continue;
          const Permutation& b = T[static_cast<std::size_t>((i + 1) % 3)];
          const Permutation& c = T[static_cast<std::size_t>((i + 2) % 3)];
          const Permutation f = frame(n, {A, B, outpart(x)});
          opts.emplace_back(f, Roles{x, b, c, w});
          opts.emplace_back(f, Roles{x, c, b, w});
        }
      }
      first_fit(a, opts, small);
      return;
    }
    const int po = outpart(T[0]);
    const int qo = outpart(T[1]);
    const int ro = outpart(T[2]);
    const Permutation f = frame(n, {A, B});
    std::vector<std::pair<Permutation, Roles>> opts;
    if (po != qo && qo != ro && po != ro) {
      int hub = -1;
      for (int i = 0; i < 3; ++i) {
        if (outpart(T[static_cast<std::size_t>(i)]) == B) hub = i;
      }
      for (int i = 0; i < 3; ++i) {
        if (hub >= 0 && i != hub) continue;
        for (int k = 1; k <= 2; ++k) {
          const auto& x = T[static_cast<std::size_t>(i)];
          const auto& y = T[static_cast<std::size_t>((i + k) % 3)];
          const auto& z = T[static_cast<std::size_t>((i + 3 - k) % 3)];
          opts.emplace_back(f, Roles{x, y, z, w});
        }
      }
      const std::string label = hub < 0 ? "5.1.1" : (hub == 0 ? "5.1.2" : "5.1.3");
      first_fit(a, opts, [&](Attempt& at) { case51(at, label); });
      return;
    }
    if (po == qo && qo == ro) {
      for (int i = 0; i < 3; ++i) {
        const auto& x = T[static_cast<std::size_t>(i)];
        const auto& y = T[static_cast<std::size_t>((i + 1) % 3)];
        const auto& z = T[static_cast<std::size_t>((i + 2) % 3)];
        if (g.adjacent(x, y) || g.adjacent(x, z)) continue;
        opts.emplace_back(f, Roles{x, y, z, w});
      }
      if (opts.empty()) {
        a.open(f, Roles{T[0], T[1], T[2], w});
        a.label("5.3.2");
        throw ScriptGap("case 5.3.2 is not scripted");
      }
      first_fit(a, opts, case531);
      return;
    }
    int lone = po == qo ? 2 : (po == ro ? 1 : 0);
    const auto& x = T[static_cast<std::size_t>(lone)];
    const auto& y = T[static_cast<std::size_t>((lone + 1) % 3)];
    const auto& z = T[static_cast<std::size_t>((lone + 2) % 3)];
    opts.emplace_back(f, Roles{x, y, z, w});
    opts.emplace_back(f, Roles{x, z, y, w});
    first_fit(a, opts, case52);
  });
}

}  // namespace detail

TreePacking build_case5(const CasePlan& plan) {
  CasePlan copy = plan;
  return detail::run_case5(copy);
}

}  // namespace bubblepack
