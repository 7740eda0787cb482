#include "script.hpp"

#include "build_internal.hpp"

#include <algorithm>
#include <deque>

namespace bubblepack::detail {

TreeDraft& TreeDraft::add(const Permutation& a, const Permutation& b) {
  if (a != b) edges.emplace_back(a, b);
  return *this;
}

TreeDraft& TreeDraft::add(const Path& p) {
  for (std::size_t i = 1; i < p.size(); ++i) add(p[i - 1], p[i]);
  return *this;
}

TreeDraft& TreeDraft::add(const TreeDraft& t) {
  edges.insert(edges.end(), t.edges.begin(), t.edges.end());
  return *this;
}

Permutation frame(int n, const std::vector<int>& leading) {
  std::vector<int> map(static_cast<std::size_t>(n) + 1, 0);
  std::vector<char> taken(static_cast<std::size_t>(n) + 1, 0);
  int target = 1;
  for (int s : leading) {
    if (map[static_cast<std::size_t>(s)]) continue;
    map[static_cast<std::size_t>(s)] = target;
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
  return Permutation(std::span<const int>(map.data() + 1, static_cast<std::size_t>(n)));
}

const Permutation& next_to(const Path& p, const Permutation& end) {
  if (p.size() < 2) throw ScriptGap("path too short");
  return p.front() == end ? p[1] : p[p.size() - 2];
}

int swap_position(const Permutation& u, const Permutation& v) {
  for (int i = 1; i < u.arity(); ++i) {
    if (u.swap_adjacent(i) == v) return i;
  }
  return 0;
}

Script::Script(CasePlan& plan, const Permutation& relabel, const Roles& roles)
    : plan_(plan),
      n_(plan.n),
      g_(plan.n),
      whole_(RegionSpec::whole(plan.n)),
      relabel_(relabel),
      back_(inverse(relabel)),
      used_(static_cast<std::size_t>(whole_.size()), 0) {
  plan_.relabel = relabel;
  plan_.x = roles[0];
  plan_.y = roles[1];
  plan_.z = roles[2];
  plan_.w = roles[3];
  plan_.anchors.clear();
  plan_.terminal_sets.clear();
  plan_.regions.clear();
  const char* names[] = {"x", "y", "z", "w"};
  for (std::size_t k = 0; k < 4; ++k) {
    roles_[k] = compose(relabel_, roles[k]);
    named_[names[k]] = roles_[k];
    plan_.anchors.push_back({names[k], roles[k], "", {}});
  }
}

bool Script::is_terminal(const Permutation& u) const {
  return std::find(roles_.begin(), roles_.end(), u) != roles_.end();
}

Permutation Script::anchor(const std::string& name, const std::string& base, const std::vector<int>& swaps) {
  Permutation v = at(base);
  for (int p : swaps) v = v.swap_adjacent(p);
  named_[name] = v;
  plan_.anchors.push_back({name, to_original(v), base, swaps});
  return v;
}

Permutation Script::anchor_neighbor(const std::string& name, const std::string& base, const Permutation& value) {
  const int p = swap_position(at(base), value);
  if (p == 0) throw ScriptGap(name + " is not adjacent to " + base);
  return anchor(name, base, {p});
}

const Permutation& Script::at(const std::string& name) const {
  auto it = named_.find(name);
  if (it == named_.end()) throw std::logic_error("unknown anchor " + name);
  return it->second;
}

void Script::note(const std::string& text) { plan_.notes.push_back(text); }

RegionSpec Script::parts_except(const std::vector<int>& symbols) const {
  std::vector<int> keep;
  for (int s = 1; s <= n_; ++s) {
    if (std::find(symbols.begin(), symbols.end(), s) == symbols.end()) keep.push_back(s);
  }
  return RegionSpec::parts(n_, keep);
}

int Script::id(const Permutation& u) const { return static_cast<int>(rank(u)); }

std::vector<TreeDraft> Script::steiner(const RegionSpec& r, const std::vector<Permutation>& terms, int k) {
  record(r);
  for (const auto& v : region_members(r)) {
    if (claimed(v)) throw ScriptGap("k3 region already in use at " + to_string(v));
  }
  const TreePacking p = steiner_packing_k3(r, terms, k);
  if (static_cast<int>(p.trees.size()) < k) throw ScriptGap("k3 packing short in " + r.to_string());
  std::vector<TreeDraft> out;
  for (const auto& t : p.trees) {
    TreeDraft d;
    for (const auto& e : t.edges) d.add(e.a, e.b);
    out.push_back(std::move(d));
  }
  return out;
}

bool Script::claimed(const Permutation& u) const { return used_[static_cast<std::size_t>(id(u))] != 0; }

void Script::claim(const Permutation& u) {
  if (!is_terminal(u)) used_[static_cast<std::size_t>(id(u))] = 1;
}

void Script::claim(const Path& p) {
  for (const auto& v : p) claim(v);
}

void Script::claim(const TreeDraft& t) {
  for (const auto& e : t.edges) {
    claim(e.a);
    claim(e.b);
  }
}

void Script::record(const RegionSpec& r) {
  const RegionSpec orig = r.relabeled(back_);
  if (std::find(plan_.regions.begin(), plan_.regions.end(), orig) == plan_.regions.end()) {
    plan_.regions.push_back(orig);
  }
}

void Script::record(TerminalRole role, const std::vector<Permutation>& vs) {
  TerminalSet ts{role, {}};
  for (const auto& v : vs) ts.vertices.push_back(to_original(v));
  plan_.terminal_sets.push_back(std::move(ts));
}

std::vector<char> Script::blocked_for(const RegionSpec& r, const std::vector<Permutation>& ends) const {
  std::vector<char> blocked(static_cast<std::size_t>(whole_.size()), 0);
  for (int v = 0; v < whole_.size(); ++v) {
    blocked[static_cast<std::size_t>(v)] = used_[static_cast<std::size_t>(v)] || !r.contains(whole_.vertex(v));
  }
  for (const auto& e : ends) {
    if (!r.contains(e)) throw ScriptGap(to_string(e) + " lies outside " + r.to_string());
    blocked[static_cast<std::size_t>(id(e))] = 0;
  }
  return blocked;
}

namespace {

Path to_path(const RegionGraph& g, const std::vector<int>& ids) {
  Path p;
  for (int v : ids) p.push_back(g.vertex(v));
  return p;
}

}  // namespace

std::vector<Path> Script::st(const RegionSpec& r, const Permutation& u, const Permutation& v, std::size_t k) {
  record(r);
  const auto blocked = blocked_for(r, {u, v});
  const LocalPaths lp = local_st_paths(whole_, blocked, id(u), id(v), k);
  if (lp.paths.size() < k) {
    throw ScriptGap("only " + std::to_string(lp.paths.size()) + " (u,v)-paths in " + r.to_string());
  }
  std::vector<Path> out;
  for (const auto& p : lp.paths) out.push_back(to_path(whole_, p));
  return out;
}

std::map<Permutation, Path> Script::fan(const RegionSpec& r, const Permutation& src, const std::vector<Permutation>& Y,
                                        TerminalRole role) {
  record(r);
  record(role, Y);
  std::vector<Permutation> ends = Y;
  ends.push_back(src);
  const auto blocked = blocked_for(r, ends);
  std::vector<int> ys;
  std::map<Permutation, Path> out;
  for (const auto& y : Y) {
    if (y == src) {
      out.emplace(src, Path{src});
    } else {
      ys.push_back(id(y));
    }
  }
  std::sort(ys.begin(), ys.end());
  if (std::adjacent_find(ys.begin(), ys.end()) != ys.end()) throw ScriptGap("fan targets repeat");
  if (ys.empty()) return out;
  const LocalPaths lp = local_fan_paths(whole_, blocked, id(src), ys, ys.size());
  if (lp.paths.size() < ys.size()) throw ScriptGap("fan short in " + r.to_string());
  for (const auto& p : lp.paths) {
    Path q = to_path(whole_, p);
    out.emplace(q.back(), std::move(q));
  }
  return out;
}

std::map<Permutation, Path> Script::link(const RegionSpec& r, const std::vector<Permutation>& X,
                                         const std::vector<Permutation>& Y, TerminalRole xrole, TerminalRole yrole) {
  record(r);
  record(xrole, X);
  record(yrole, Y);
  std::vector<Permutation> ends = X;
  ends.insert(ends.end(), Y.begin(), Y.end());
  const auto blocked = blocked_for(r, ends);
  std::vector<int> xs;
  std::vector<int> ys;
  for (const auto& v : X) xs.push_back(id(v));
  for (const auto& v : Y) ys.push_back(id(v));
  const LocalPaths lp = local_set_paths(whole_, blocked, xs, ys, X.size());
  if (lp.paths.size() < X.size()) throw ScriptGap("set paths short in " + r.to_string());
  std::map<Permutation, Path> out;
  for (const auto& p : lp.paths) {
    Path q = to_path(whole_, p);
    out.emplace(q.front(), std::move(q));
  }
  if (out.size() < X.size()) throw ScriptGap("set paths reuse a start");
  return out;
}

Path Script::route(const RegionSpec& r, const Permutation& a, const Permutation& b) {
  record(r);
  const auto blocked = blocked_for(r, {a, b});
  std::vector<int> parent(static_cast<std::size_t>(whole_.size()), -2);
  std::deque<int> queue{id(a)};
  parent[static_cast<std::size_t>(id(a))] = -1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    if (v == id(b)) break;
    for (int w : whole_.neighbors(v)) {
      if (blocked[static_cast<std::size_t>(w)] || parent[static_cast<std::size_t>(w)] != -2) continue;
      parent[static_cast<std::size_t>(w)] = v;
      queue.push_back(w);
    }
  }
  if (parent[static_cast<std::size_t>(id(b))] == -2) throw ScriptGap("no route in " + r.to_string());
  Path p;
  for (int v = id(b); v != -1; v = parent[static_cast<std::size_t>(v)]) p.push_back(whole_.vertex(v));
  std::reverse(p.begin(), p.end());
  return p;
}

TreeDraft Script::tree(const RegionSpec& r, const std::vector<Permutation>& terms) {
  record(r);
  const auto blocked = blocked_for(r, terms);
  const int root = id(terms.front());
  std::vector<int> parent(static_cast<std::size_t>(whole_.size()), -2);
  std::deque<int> queue{root};
  parent[static_cast<std::size_t>(root)] = -1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int w : whole_.neighbors(v)) {
      if (blocked[static_cast<std::size_t>(w)] || parent[static_cast<std::size_t>(w)] != -2) continue;
      parent[static_cast<std::size_t>(w)] = v;
      queue.push_back(w);
    }
  }
  TreeDraft t;
  std::vector<char> in_tree(static_cast<std::size_t>(whole_.size()), 0);
  in_tree[static_cast<std::size_t>(root)] = 1;
  for (const auto& term : terms) {
    int v = id(term);
    if (parent[static_cast<std::size_t>(v)] == -2) throw ScriptGap("tree terminals disconnected in " + r.to_string());
    while (!in_tree[static_cast<std::size_t>(v)]) {
      in_tree[static_cast<std::size_t>(v)] = 1;
      const int p = parent[static_cast<std::size_t>(v)];
      t.add(whole_.vertex(v), whole_.vertex(p));
      v = p;
    }
  }
  return t;
}

TreePacking Script::emit(const std::vector<TreeDraft>& trees, const std::string& label) const {
  TreePacking p;
  p.n = n_;
  for (const auto& draft : trees) {
    TreeCertificate cert;
    for (const auto& e : draft.edges) cert.edges.emplace_back(to_original(e.a), to_original(e.b));
    std::sort(cert.edges.begin(), cert.edges.end());
    cert.edges.erase(std::unique(cert.edges.begin(), cert.edges.end()), cert.edges.end());
    cert.provenance.push_back("case " + label + ": scripted");
    p.trees.push_back(std::move(cert));
  }
  return p;
}

}  // namespace bubblepack::detail

namespace bubblepack::detail {

Arm end_port(Script& s, const Path& p, const Permutation& u, const std::string& uname) {
  const Permutation nb = next_to(p, u);
  const int j = swap_position(u, nb);
  const int n = s.n();
  Arm arm;
  arm.body.add(p);
  if (j >= 1 && j <= n - 3) {
    const std::string name = uname + "_" + std::to_string(j);
    s.anchor(name, uname, {j});
    arm.port = nb;
    arm.exit = s.anchor(name + "'", name, {n - 1});
  } else if (j == n - 2) {
    arm.port = u;
    arm.exit = s.anchor(uname + "'", uname, {n - 1});
  } else {
    throw ScriptGap("path leaves " + uname + " through its out-neighbour");
  }
  return arm;
}

std::vector<TreeDraft> relay(Script& s, const RegionSpec& r, const std::vector<Arm>& a,
                             const std::vector<Arm>& b) {
  std::vector<Permutation> X;
  std::vector<Permutation> Y;
  for (const auto& arm : a) {
    s.claim(arm.body);
    s.claim(arm.port);
    X.push_back(arm.exit);
  }
  for (const auto& arm : b) {
    s.claim(arm.body);
    s.claim(arm.port);
    Y.push_back(arm.exit);
  }
  const auto R = s.link(r, X, Y);
  std::vector<TreeDraft> trees;
  for (const auto& arm : a) {
    const Path& path = R.at(arm.exit);
    auto it = std::find_if(b.begin(), b.end(), [&](const Arm& o) { return o.exit == path.back(); });
    if (it == b.end()) throw ScriptGap("relay path ends off the exits");
    TreeDraft t = arm.body;
    t.add(arm.port, arm.exit).add(path).add(it->exit, it->port).add(it->body);
    trees.push_back(std::move(t));
  }
  return trees;
}

Script& Attempt::open(const Permutation& relabel, const Roles& roles) {
  script_ = std::make_unique<Script>(plan_, relabel, roles);
  return *script_;
}

Script& Attempt::script() {
  if (!script_) throw std::logic_error("attempt has no script");
  return *script_;
}

TreePacking Attempt::close(const std::string& gap) {
  plan_.subcase = label_;
  TreePacking scripted = script_ ? script_->emit(trees, label_) : TreePacking{};
  if (!gap.empty()) {
    plan_.notes.push_back("scripted step failed: " + gap);
    scripted.case_trail.push_back("script gap: " + gap);
  }
  return finish(plan_, std::move(scripted), label_);
}

}  // namespace bubblepack::detail
