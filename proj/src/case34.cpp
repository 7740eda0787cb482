#include <algorithm>
#include <numeric>

#include "bubblepack/tree_builder.hpp"
#include "build_internal.hpp"
#include "script.hpp"

namespace bubblepack {
namespace detail {

namespace {

RegionSpec parts_of(const Script& s, std::vector<int> symbols) {
  std::sort(symbols.begin(), symbols.end());
  symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
  return s.parts(std::move(symbols));
}

// Trees fa[exit] + a-port + L_i + b-port + fb[exit] over (a,b)-paths L.
std::vector<TreeDraft> two_sided(Script& s, const std::vector<Path>& L, const Permutation& a, const std::string& an,
                                 const Permutation& b, const std::string& bn, const RegionSpec& ra,
                                 const Permutation& sa, const RegionSpec& rb, const Permutation& sb) {
  std::vector<Arm> aa;
  std::vector<Arm> ba;
  for (const auto& p : L) {
    aa.push_back(end_port(s, p, a, an));
    ba.push_back(end_port(s, p, b, bn));
    s.claim(p);
  }
  std::vector<Permutation> X;
  std::vector<Permutation> Y;
  for (std::size_t i = 0; i < L.size(); ++i) {
    s.claim(aa[i].port);
    s.claim(ba[i].port);
    s.claim(aa[i].exit);
    s.claim(ba[i].exit);
    X.push_back(aa[i].exit);
    Y.push_back(ba[i].exit);
  }
  const auto fx = s.fan(ra, sa, X, TerminalRole::X);
  s.claim_all(fx);
  const auto fy = s.fan(rb, sb, Y, TerminalRole::Y);
  std::vector<TreeDraft> trees;
  for (std::size_t i = 0; i < L.size(); ++i) {
    TreeDraft t = aa[i].body;
    t.add(aa[i].port, aa[i].exit).add(fx.at(aa[i].exit));
    t.add(ba[i].port, ba[i].exit).add(fy.at(ba[i].exit));
    trees.push_back(std::move(t));
  }
  return trees;
}

// Trees L_i + a-port + F1 (a fan from c) + c-port + F2 (a fan from d).
std::vector<TreeDraft> chain(Script& s, const std::vector<Path>& L, const Permutation& a, const std::string& an,
                             const RegionSpec& r1, const Permutation& c, const std::string& cn,
                             const RegionSpec& r2, const Permutation& d) {
  std::vector<Arm> aa;
  std::vector<Permutation> X;
  for (const auto& p : L) {
    aa.push_back(end_port(s, p, a, an));
    s.claim(p);
  }
  for (const auto& arm : aa) {
    s.claim(arm.port);
    s.claim(arm.exit);
    X.push_back(arm.exit);
  }
  const auto f1 = s.fan(r1, c, X, TerminalRole::X);
  std::vector<Arm> ca;
  std::vector<Permutation> Y;
  for (const auto& arm : aa) {
    ca.push_back(end_port(s, f1.at(arm.exit), c, cn));
    s.claim(f1.at(arm.exit));
  }
  for (const auto& arm : ca) {
    s.claim(arm.port);
    s.claim(arm.exit);
    Y.push_back(arm.exit);
  }
  const auto f2 = s.fan(r2, d, Y, TerminalRole::Y);
  std::vector<TreeDraft> trees;
  for (std::size_t i = 0; i < aa.size(); ++i) {
    TreeDraft t = aa[i].body;
    t.add(aa[i].port, aa[i].exit).add(ca[i].body).add(ca[i].port, ca[i].exit).add(f2.at(ca[i].exit));
    trees.push_back(std::move(t));
  }
  return trees;
}

// Canonical main part of u's out-neighbour under relabelling f.
int cpart_out(const BubbleGraph& g, const Permutation& f, const Permutation& u) {
  return f(main_part(g.out_neighbor(u)));
}

void case31(Attempt& at) {
  Script& s = at.script();
  const int n = s.n();
  at.label("3.1");
  const int p = main_part(s.out(s.x()));
  const int r = main_part(s.out(s.y()));
  const auto L = s.st(s.parts({1}), s.x(), s.y(), static_cast<std::size_t>(n - 2));
  at.trees = two_sided(s, L, s.x(), "x", s.y(), "y", parts_of(s, {2, p}), s.z(), parts_of(s, {3, r}), s.w());
}

void case32(Attempt& at) {
  Script& s = at.script();
  const int n = s.n();
  at.label("3.2");
  if (n < 5) throw ScriptGap("case 3.2 at n = 4 has no ladder");
  const int p = main_part(s.out(s.x()));
  const auto& x = s.x();
  const auto& y = s.y();
  const auto L = s.st(s.suffix({p, 1}), x, y, static_cast<std::size_t>(n - 3));
  std::vector<Arm> xa;
  std::vector<Arm> ya;
  for (const auto& path : L) {
    if (path.size() == 2) {
      // The edge xy leaves x through x' and x^1 = x'[n-2,n-1].
      const Permutation xo = s.anchor("x'", "x", {n - 1});
      Arm first;
      first.body.add(x, y).add(x, xo).add(xo, s.anchor("xhat_1", "x'", {n - 2}));
      first.port = s.at("xhat_1");
      first.exit = s.anchor("xhat_1'", "xhat_1", {n - 1});
      xa.push_back(first);
      ya.push_back({TreeDraft{}, x, xo});
      s.claim(path);
      s.claim(first.body);
      continue;
    }
    xa.push_back(hat_arm(s, path));
    ya.push_back(end_port(s, path, y, "y"));
    s.claim(path);
    s.claim(xa.back().port);
    s.claim(ya.back().port);
  }
  const Ladder ld = ladder(s);
  xa.push_back({TreeDraft{}.add(ld.path), ld.xhat, s.anchor("xhat_{n-2}'", "xhat_{n-2}", {n - 1})});
  ya.push_back({TreeDraft{}, y, s.anchor("y'", "y", {n - 1})});
  std::vector<Permutation> X;
  std::vector<Permutation> Y;
  for (const auto& a : xa) X.push_back(a.exit);
  for (const auto& a : ya) Y.push_back(a.exit);
  for (const auto& v : X) s.claim(v);
  for (const auto& v : Y) s.claim(v);
  const auto Q = s.fan(s.parts_except({1, 2, p}), s.w(), X, TerminalRole::X);
  s.claim_all(Q);
  const auto R = s.fan(parts_of(s, {2, p}), s.z(), Y, TerminalRole::Y);
  for (std::size_t i = 0; i < xa.size(); ++i) {
    TreeDraft t = xa[i].body;
    t.add(xa[i].port, xa[i].exit).add(Q.at(xa[i].exit));
    t.add(ya[i].port, ya[i].exit).add(R.at(ya[i].exit));
    at.trees.push_back(std::move(t));
  }
}

}  // namespace

TreePacking run_case3(CasePlan& plan) {
  Attempt at(plan, "3");
  return at.run([&](Attempt& a) {
    const int n = plan.n;
    const BubbleGraph g(n);
    const std::array<Roles, 4> orders{Roles{plan.x, plan.y, plan.z, plan.w}, Roles{plan.y, plan.x, plan.z, plan.w},
                                      Roles{plan.x, plan.y, plan.w, plan.z}, Roles{plan.y, plan.x, plan.w, plan.z}};
    const bool same = main_part(g.out_neighbor(plan.x)) == main_part(g.out_neighbor(plan.y));
    std::vector<std::pair<Permutation, Roles>> fits;
    for (const auto& o : orders) {
      const Permutation f = frame(n, {main_part(o[0]), main_part(o[2]), main_part(o[3])});
      const int p = cpart_out(g, f, o[0]);
      const int r = cpart_out(g, f, o[1]);
      if (same ? p != 3 : (p != 3 && r != 2)) fits.emplace_back(f, o);
    }
    if (fits.empty()) {
      a.open(frame(n, {main_part(plan.x), main_part(plan.z), main_part(plan.w)}),
             Roles{plan.x, plan.y, plan.z, plan.w});
      a.label(same ? "3.2" : "3.1");
      throw ScriptGap("no role order meets the part assumptions");
    }
    first_fit(a, fits, same ? case32 : case31);
  });
}

namespace {

void case4_first(Attempt& at) {
  Script& s = at.script();
  const int n = s.n();
  at.label("4");
  const auto L = s.st(s.parts({1, 3}), s.x(), s.z(), static_cast<std::size_t>(n - 2));
  for (const auto& p : L) s.claim(p);
  const auto Q = s.st(s.parts({2, 4}), s.y(), s.w(), static_cast<std::size_t>(n - 2));
  std::vector<Arm> la;
  std::vector<Arm> qa;
  for (const auto& p : L) la.push_back(end_port(s, p, s.x(), "x"));
  for (const auto& p : Q) qa.push_back(end_port(s, p, s.y(), "y"));
  at.trees = relay(s, s.parts_except({1, 2, 3, 4}), la, qa);
}

void case41_far(Attempt& at) {
  Script& s = at.script();
  const int n = s.n();
  at.label("4.1");
  s.note("z' in V_4");
  const auto L = s.st(s.parts({1, 3}), s.x(), s.z(), static_cast<std::size_t>(n - 2));
  at.trees = two_sided(s, L, s.x(), "x", s.z(), "z", s.parts({2}), s.y(), s.parts({4}), s.w());
}

void case41_near(Attempt& at) {
  Script& s = at.script();
  const int n = s.n();
  at.label("4.1");
  s.note("z' in V_1");
  const auto L = s.st(s.parts({3, 4}), s.z(), s.w(), static_cast<std::size_t>(n - 2));
  at.trees = chain(s, L, s.z(), "z", s.parts({1}), s.x(), "x", s.parts({2}), s.y());
}

void case42(Attempt& at) {
  Script& s = at.script();
  const int n = s.n();
  at.label("4.2");
  const auto L = s.st(s.parts({1, 4}), s.x(), s.w(), static_cast<std::size_t>(n - 2));
  at.trees = chain(s, L, s.x(), "x", s.parts({2}), s.y(), "y", s.parts({3}), s.z());
}

}  // namespace

TreePacking run_case4(CasePlan& plan) {
  Attempt at(plan, "4");
  return at.run([&](Attempt& a) {
    const int n = plan.n;
    const BubbleGraph g(n);
    const std::array<Permutation, 4> S{plan.x, plan.y, plan.z, plan.w};
    std::array<int, 4> idx{0, 1, 2, 3};
    struct Choice {
      int pattern;
      Roles roles;
      Permutation f;
    };
    std::vector<Choice> found;
    do {
      const Roles o{S[static_cast<std::size_t>(idx[0])], S[static_cast<std::size_t>(idx[1])],
                    S[static_cast<std::size_t>(idx[2])], S[static_cast<std::size_t>(idx[3])]};
      const Permutation f = frame(n, {main_part(o[0]), main_part(o[1]), main_part(o[2]), main_part(o[3])});
      const int xo = cpart_out(g, f, o[0]);
      const int yo = cpart_out(g, f, o[1]);
      const int zo = cpart_out(g, f, o[2]);
      int pattern = -1;
      if (xo >= 5 && yo >= 5) {
        pattern = 0;
      } else if (xo == 2 && yo == 1 && zo == 4) {
        pattern = 1;
      } else if (xo == 2 && yo == 1 && zo == 1) {
        pattern = 2;
      } else if (xo == 2 && yo == 3) {
        pattern = 3;
      }
      if (pattern >= 0) found.push_back({pattern, o, f});
    } while (std::next_permutation(idx.begin(), idx.end()));
    if (found.empty()) {
      a.open(frame(n, {main_part(S[0]), main_part(S[1]), main_part(S[2]), main_part(S[3])}), S);
      throw ScriptGap("no role order meets the part assumptions");
    }
    const auto best = std::min_element(found.begin(), found.end(),
                                       [](const Choice& l, const Choice& r) { return l.pattern < r.pattern; });
    a.open(best->f, best->roles);
    switch (best->pattern) {
      case 0:
        case4_first(a);
        break;
      case 1:
        case41_far(a);
        break;
      case 2:
        case41_near(a);
        break;
      default:
        case42(a);
        break;
    }
  });
}

}  // namespace detail

TreePacking build_case3(const CasePlan& plan) {
  CasePlan copy = plan;
  return detail::run_case3(copy);
}

TreePacking build_case4(const CasePlan& plan) {
  CasePlan copy = plan;
  return detail::run_case4(copy);
}

}  // namespace bubblepack
