#pragma once

#include <array>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "bubblepack/bubble_graph.hpp"
#include "bubblepack/menger.hpp"
#include "bubblepack/packing.hpp"
#include "bubblepack/tree_builder.hpp"

namespace bubblepack::detail {

using Path = std::vector<Permutation>;

// A scripted step that cannot be carried out on this instance.
class ScriptGap : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TreeDraft {
  std::vector<Edge> edges;

  TreeDraft& add(const Permutation& a, const Permutation& b);
  TreeDraft& add(const Path& p);
  TreeDraft& add(const TreeDraft& t);
};

// One strand of a relay: a body holding terminals, left through the edge
// port-exit.
struct Arm {
  TreeDraft body;
  Permutation port;
  Permutation exit;
};

// Symbol relabelling sending leading[k] to k+1; the other symbols keep their
// relative order.
Permutation frame(int n, const std::vector<int>& leading);

// Plain (unordered) roles x, y, z, w in original coordinates.
using Roles = std::array<Permutation, 4>;

// Works in canonical coordinates compose(relabel, original). Every engine
// call avoids claimed vertices except the endpoints it is handed, and records
// its region and terminal sets on the plan in original coordinates.
class Script {
 public:
  Script(CasePlan& plan, const Permutation& relabel, const Roles& roles);

  int n() const noexcept { return n_; }
  const Permutation& x() const noexcept { return roles_[0]; }
  const Permutation& y() const noexcept { return roles_[1]; }
  const Permutation& z() const noexcept { return roles_[2]; }
  const Permutation& w() const noexcept { return roles_[3]; }
  bool is_terminal(const Permutation& u) const;

  Permutation out(const Permutation& u) const { return u.swap_adjacent(n_ - 1); }
  static Permutation sw(const Permutation& u, int i) { return u.swap_adjacent(i); }
  bool adjacent(const Permutation& a, const Permutation& b) const { return g_.adjacent(a, b); }

  // Records `name` = base . [s1,s1+1] . [s2,s2+1] ... and returns its value.
  Permutation anchor(const std::string& name, const std::string& base, const std::vector<int>& swaps);
  // Records `name` as an adjacent swap of `base` (throws ScriptGap if none).
  Permutation anchor_neighbor(const std::string& name, const std::string& base, const Permutation& value);
  const Permutation& at(const std::string& name) const;
  void note(const std::string& text);

  RegionSpec whole() const { return RegionSpec::whole(n_); }
  RegionSpec parts(std::vector<int> symbols) const { return RegionSpec::parts(n_, std::move(symbols)); }
  RegionSpec suffix(std::vector<int> tail) const { return RegionSpec::suffix(n_, std::move(tail)); }
  // Main parts other than the listed ones.
  RegionSpec parts_except(const std::vector<int>& symbols) const;

  // k internally disjoint (u,v)-paths inside r, sorted.
  std::vector<Path> st(const RegionSpec& r, const Permutation& u, const Permutation& v, std::size_t k);
  // |Y| paths from src ending at distinct members of Y, keyed by their end.
  std::map<Permutation, Path> fan(const RegionSpec& r, const Permutation& src, const std::vector<Permutation>& Y,
                                  TerminalRole role = TerminalRole::Y);
  // |X| pairwise disjoint (X,Y)-paths keyed by their start in X.
  std::map<Permutation, Path> link(const RegionSpec& r, const std::vector<Permutation>& X,
                                   const std::vector<Permutation>& Y, TerminalRole xrole = TerminalRole::X,
                                   TerminalRole yrole = TerminalRole::Z);
  Path route(const RegionSpec& r, const Permutation& a, const Permutation& b);
  // Union of BFS paths from terms[0] to the others inside r.
  TreeDraft tree(const RegionSpec& r, const std::vector<Permutation>& terms);
  // k internally disjoint trees on three terminals inside a suffix class.
  std::vector<TreeDraft> steiner(const RegionSpec& r, const std::vector<Permutation>& terms, int k);

  // The first `count` free members of r (rank order) satisfying pred.
  template <class Pred>
  std::vector<Permutation> pick(const RegionSpec& r, std::size_t count, Pred pred) {
    std::vector<Permutation> got;
    for (const auto& v : region_members(r)) {
      if (got.size() == count) break;
      if (is_terminal(v) || claimed(v) || !pred(v)) continue;
      got.push_back(v);
    }
    if (got.size() < count) throw ScriptGap("too few auxiliary vertices in " + r.to_string());
    return got;
  }

  bool claimed(const Permutation& u) const;
  void claim(const Permutation& u);
  void claim(const Path& p);
  void claim(const TreeDraft& t);
  template <class Map>
  void claim_all(const Map& m) {
    for (const auto& [key, p] : m) claim(p);
  }

  // Maps the drafts back to original coordinates.
  TreePacking emit(const std::vector<TreeDraft>& trees, const std::string& label) const;

 private:
  std::vector<char> blocked_for(const RegionSpec& r, const std::vector<Permutation>& ends) const;
  int id(const Permutation& u) const;
  void record(const RegionSpec& r);
  void record(TerminalRole role, const std::vector<Permutation>& vs);
  Permutation to_original(const Permutation& u) const { return compose(back_, u); }

  CasePlan& plan_;
  int n_;
  BubbleGraph g_;
  RegionGraph whole_;
  Permutation relabel_;
  Permutation back_;
  Roles roles_;
  std::vector<char> used_;
  std::map<std::string, Permutation> named_;
};

// Neighbour of the endpoint `end` along p.
const Permutation& next_to(const Path& p, const Permutation& end);
// i with u[i,i+1] == v, or 0.
int swap_position(const Permutation& u, const Permutation& v);

// Port at the end u of a path leaving u's main part through u's in-neighbour
// u[i,i+1]: for i <= n-3 the neighbour exits through its own out-neighbour,
// for i = n-2 the path leaves through u'.
Arm end_port(Script& s, const Path& p, const Permutation& u, const std::string& uname);

// Pairs the exits of a with those of b by disjoint set paths in r. Trees
// follow the order of a.
std::vector<TreeDraft> relay(Script& s, const RegionSpec& r, const std::vector<Arm>& a,
                             const std::vector<Arm>& b);

// Arm through x̂_j = x_j[n-2,n-1] where x_j = x[j,j+1] is x's neighbour on p.
Arm hat_arm(Script& s, const Path& p);

// The long (x,y)-path P_x + P_xy + P_y for x, y sharing the suffix (c,1),
// n >= 5. P_xy is a BFS path in the two sub-parts the ladder ends reach.
struct Ladder {
  Path path;
  Permutation xhat;  // the far end of P_x
};
Ladder ladder(Script& s);

// A scripted attempt: the body fills `trees`; a ScriptGap stops it and the
// finished trees so far go to the fallback as the clean prefix.
class Attempt {
 public:
  Attempt(CasePlan& plan, std::string label) : plan_(plan), label_(std::move(label)) {}
  Script& open(const Permutation& relabel, const Roles& roles);
  Script& script();
  void label(const std::string& l) { label_ = l; }
  std::vector<TreeDraft> trees;

  template <class Body>
  TreePacking run(Body body) {
    std::string gap;
    try {
      body(*this);
    } catch (const ScriptGap& e) {
      gap = e.what();
    } catch (const ConstructionFailure& e) {
      gap = e.what();
    }
    return close(gap);
  }

 private:
  TreePacking close(const std::string& gap);

  CasePlan& plan_;
  std::string label_;
  std::unique_ptr<Script> script_;
};

// Runs body under each (relabel, roles) option in turn until one finishes
// without a gap; the last gap propagates.
template <class Body>
void first_fit(Attempt& a, const std::vector<std::pair<Permutation, Roles>>& options, Body body) {
  for (std::size_t i = 0; i < options.size(); ++i) {
    a.trees.clear();
    a.open(options[i].first, options[i].second);
    try {
      body(a);
      return;
    } catch (const ScriptGap&) {
      if (i + 1 == options.size()) throw;
    }
  }
}

// Case builders with plan bookkeeping (the public ones copy the plan).
TreePacking run_case2(CasePlan& plan);
TreePacking run_case3(CasePlan& plan);
TreePacking run_case4(CasePlan& plan);
TreePacking run_case5(CasePlan& plan);

}  // namespace bubblepack::detail
