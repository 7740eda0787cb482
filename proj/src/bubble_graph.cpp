#include "bubblepack/bubble_graph.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <sstream>
#include <stdexcept>

#include "bubblepack/errors.hpp"

namespace bubblepack {

namespace {

void require_arity(const Permutation& u, int n, const char* where) {
  if (u.arity() != n) {
    throw std::invalid_argument(std::string(where) + ": vertex " + to_string(u) +
                                " has arity " + std::to_string(u.arity()) +
                                ", graph has arity " + std::to_string(n));
  }
}

void check_symbols(int n, const std::vector<int>& symbols, const char* what) {
  unsigned seen = 0;
  for (int s : symbols) {
    if (s < 1 || s > n) {
      throw std::invalid_argument(std::string(what) + ": symbol " + std::to_string(s) +
                                  " outside [1, " + std::to_string(n) + "]");
    }
    if (seen & (1u << s)) {
      throw std::invalid_argument(std::string(what) + ": symbol " + std::to_string(s) +
                                  " repeated");
    }
    seen |= 1u << s;
  }
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a + b < a ? UINT64_MAX : a + b;
}

// All permutations with the given fixed tail, in rank order.
void append_suffix_class(int n, const std::vector<int>& tail, std::vector<Permutation>& out) {
  unsigned fixed = 0;
  for (int s : tail) fixed |= 1u << s;
  std::vector<int> seq;
  for (int s = 1; s <= n; ++s) {
    if (!(fixed & (1u << s))) seq.push_back(s);
  }
  const std::size_t head = seq.size();
  seq.insert(seq.end(), tail.begin(), tail.end());
  do {
    out.emplace_back(std::span<const int>(seq));
  } while (std::next_permutation(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(head)));
}

void collect(const RegionSpec& r, std::vector<Permutation>& out) {
  const int n = r.arity();
  switch (r.kind()) {
    case RegionSpec::Kind::whole:
      append_suffix_class(n, {}, out);
      return;
    case RegionSpec::Kind::suffix:
      append_suffix_class(n, r.symbols(), out);
      return;
    case RegionSpec::Kind::parts: {
      for (int s : r.symbols()) append_suffix_class(n, {s}, out);
      std::sort(out.begin(), out.end());
      return;
    }
    case RegionSpec::Kind::difference: {
      std::vector<Permutation> left;
      collect(r.left(), left);
      for (auto& u : left) {
        if (!r.right().contains(u)) out.push_back(u);
      }
      return;
    }
    case RegionSpec::Kind::union_of: {
      std::vector<Permutation> a;
      std::vector<Permutation> b;
      collect(r.left(), a);
      collect(r.right(), b);
      std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
      return;
    }
  }
}

class SpecParser {
 public:
  SpecParser(int n, std::string_view text) : n_(n), text_(text) {}

  RegionSpec parse() {
    RegionSpec r = expr();
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
    return r;
  }

 private:
  RegionSpec expr() {
    const std::string word = identifier();
    if (word == "whole") return RegionSpec::whole(n_);
    expect('(');
    if (word == "parts" || word == "suffix") {
      std::vector<int> symbols;
      skip_space();
      if (peek() != ')') {
        symbols.push_back(number());
        while (skip_space(), peek() == ',') {
          ++pos_;
          symbols.push_back(number());
        }
      }
      expect(')');
      return word == "parts" ? RegionSpec::parts(n_, symbols) : RegionSpec::suffix(n_, symbols);
    }
    if (word == "minus" || word == "union") {
      RegionSpec a = expr();
      expect(',');
      RegionSpec b = expr();
      expect(')');
      return word == "minus" ? RegionSpec::difference(a, b) : RegionSpec::union_of(a, b);
    }
    fail("unknown region kind '" + word + "'");
  }

  std::string identifier() {
    skip_space();
    std::string out;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      out += text_[pos_++];
    }
    if (out.empty()) fail("expected a region kind");
    return out;
  }

  int number() {
    skip_space();
    int value = 0;
    std::size_t digits = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_++] - '0');
      if (++digits > 2) fail("symbol too large");
    }
    if (digits == 0) fail("expected a symbol");
    return value;
  }

  void expect(char c) {
    skip_space();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("region '" + std::string(text_) + "': " + msg + " at offset " +
                                std::to_string(pos_));
  }

  int n_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

BubbleGraph::BubbleGraph(int n) : n_(n) {
  if (n < 2 || n > kMaxArity) {
    throw std::invalid_argument("bubble-sort graph arity must be in [2, " +
                                std::to_string(kMaxArity) + "], got " + std::to_string(n));
  }
}

std::vector<Permutation> BubbleGraph::neighbors(const Permutation& u) const {
  require_arity(u, n_, "neighbors");
  std::vector<Permutation> out;
  out.reserve(static_cast<std::size_t>(n_ - 1));
  for (int i = 1; i < n_; ++i) out.push_back(u.swap_adjacent(i));
  return out;
}

Permutation BubbleGraph::out_neighbor(const Permutation& u) const {
  require_arity(u, n_, "out_neighbor");
  return u.swap_adjacent(n_ - 1);
}

bool BubbleGraph::adjacent(const Permutation& u, const Permutation& v) const {
  require_arity(u, n_, "adjacent");
  require_arity(v, n_, "adjacent");
  int first = -1;
  int count = 0;
  for (int k = 1; k <= n_; ++k) {
    if (u(k) != v(k)) {
      if (first < 0) first = k;
      ++count;
    }
  }
  return count == 2 && u(first) == v(first + 1) && u(first + 1) == v(first);
}

std::uint64_t cross_edge_count(const BubbleGraph& g, int i, int j) {
  const int n = g.arity();
  if (i == j) throw std::invalid_argument("cross_edge_count: parts must differ");
  if (i < 1 || i > n || j < 1 || j > n) {
    throw std::invalid_argument("cross_edge_count: part index outside [1, n]");
  }
  std::uint64_t count = 0;
  for (const auto& u : region_members(RegionSpec::suffix(n, {i}))) {
    if (main_part(g.out_neighbor(u)) == j) ++count;
  }
  return count;
}

RegionSpec RegionSpec::whole(int n) {
  if (n < 2 || n > kMaxArity) throw std::invalid_argument("region arity out of range");
  RegionSpec r;
  r.n_ = n;
  return r;
}

RegionSpec RegionSpec::parts(int n, std::vector<int> symbols) {
  RegionSpec r = whole(n);
  check_symbols(n, symbols, "parts");
  std::sort(symbols.begin(), symbols.end());
  r.kind_ = Kind::parts;
  r.symbols_ = std::move(symbols);
  return r;
}

RegionSpec RegionSpec::suffix(int n, std::vector<int> tail) {
  RegionSpec r = whole(n);
  check_symbols(n, tail, "suffix");
  if (tail.empty()) return r;
  r.kind_ = Kind::suffix;
  r.symbols_ = std::move(tail);
  return r;
}

RegionSpec RegionSpec::difference(const RegionSpec& a, const RegionSpec& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("difference: arity mismatch");
  RegionSpec r;
  r.n_ = a.n_;
  r.kind_ = Kind::difference;
  r.left_ = std::make_shared<const RegionSpec>(a);
  r.right_ = std::make_shared<const RegionSpec>(b);
  return r;
}

RegionSpec RegionSpec::union_of(const RegionSpec& a, const RegionSpec& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("union: arity mismatch");
  RegionSpec r;
  r.n_ = a.n_;
  r.kind_ = Kind::union_of;
  r.left_ = std::make_shared<const RegionSpec>(a);
  r.right_ = std::make_shared<const RegionSpec>(b);
  return r;
}

bool RegionSpec::contains(const Permutation& u) const {
  if (u.arity() != n_) return false;
  switch (kind_) {
    case Kind::whole:
      return true;
    case Kind::parts:
      return std::binary_search(symbols_.begin(), symbols_.end(), u.last());
    case Kind::suffix: {
      const int offset = n_ - static_cast<int>(symbols_.size());
      for (std::size_t k = 0; k < symbols_.size(); ++k) {
        if (u(offset + 1 + static_cast<int>(k)) != symbols_[k]) return false;
      }
      return true;
    }
    case Kind::difference:
      return left_->contains(u) && !right_->contains(u);
    case Kind::union_of:
      return left_->contains(u) || right_->contains(u);
  }
  return false;
}

std::uint64_t RegionSpec::size_bound() const {
  switch (kind_) {
    case Kind::whole:
      return factorial(n_);
    case Kind::parts:
      return symbols_.size() * factorial(n_ - 1);
    case Kind::suffix:
      return factorial(n_ - static_cast<int>(symbols_.size()));
    case Kind::difference:
      return left_->size_bound();
    case Kind::union_of:
      return std::min(factorial(n_), saturating_add(left_->size_bound(), right_->size_bound()));
  }
  return 0;
}

RegionSpec RegionSpec::relabeled(const Permutation& symbol_map) const {
  if (symbol_map.arity() != n_) throw std::invalid_argument("relabeled: arity mismatch");
  std::vector<int> mapped;
  for (int s : symbols_) mapped.push_back(symbol_map(s));
  switch (kind_) {
    case Kind::whole:
      return *this;
    case Kind::parts:
      return parts(n_, mapped);
    case Kind::suffix:
      return suffix(n_, mapped);
    case Kind::difference:
      return difference(left_->relabeled(symbol_map), right_->relabeled(symbol_map));
    case Kind::union_of:
      return union_of(left_->relabeled(symbol_map), right_->relabeled(symbol_map));
  }
  return *this;
}

std::string RegionSpec::to_string() const {
  auto list = [this](const char* name) {
    std::string out = name;
    out += '(';
    for (std::size_t k = 0; k < symbols_.size(); ++k) {
      if (k) out += ',';
      out += std::to_string(symbols_[k]);
    }
    return out + ')';
  };
  switch (kind_) {
    case Kind::whole:
      return "whole";
    case Kind::parts:
      return list("parts");
    case Kind::suffix:
      return list("suffix");
    case Kind::difference:
      return "minus(" + left_->to_string() + "," + right_->to_string() + ")";
    case Kind::union_of:
      return "union(" + left_->to_string() + "," + right_->to_string() + ")";
  }
  return {};
}

RegionSpec RegionSpec::parse(int n, std::string_view text) {
  return SpecParser(n, text).parse();
}

bool operator==(const RegionSpec& a, const RegionSpec& b) {
  if (a.n_ != b.n_ || a.kind_ != b.kind_ || a.symbols_ != b.symbols_) return false;
  if (a.left_ && !(*a.left_ == *b.left_)) return false;
  if (a.right_ && !(*a.right_ == *b.right_)) return false;
  return true;
}

std::vector<Permutation> region_members(const RegionSpec& r, std::uint64_t guard) {
  const std::uint64_t bound = r.size_bound();
  if (bound > guard) {
    throw GuardExceeded("region " + r.to_string() + " may hold " + std::to_string(bound) +
                            " vertices, above the limit of " + std::to_string(guard),
                        bound, guard);
  }
  std::vector<Permutation> out;
  out.reserve(static_cast<std::size_t>(bound));
  collect(r, out);
  return out;
}

std::vector<Permutation> region_neighbors(const RegionSpec& r, const Permutation& u) {
  if (!r.contains(u)) {
    throw std::invalid_argument("region_neighbors: " + to_string(u) + " is not in region " +
                                r.to_string());
  }
  std::vector<Permutation> out;
  for (int i = 1; i < r.arity(); ++i) {
    Permutation v = u.swap_adjacent(i);
    if (r.contains(v)) out.push_back(v);
  }
  return out;
}

TreeCertificate region_spanning_tree(const RegionSpec& r) {
  const RegionGraph g(r);
  TreeCertificate tree;
  if (g.size() == 0) return tree;
  std::vector<char> seen(static_cast<std::size_t>(g.size()), 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  while (!queue.empty()) {
    const int a = queue.front();
    queue.pop_front();
    for (int b : g.neighbors(a)) {
      if (seen[static_cast<std::size_t>(b)]) continue;
      seen[static_cast<std::size_t>(b)] = 1;
      tree.edges.emplace_back(g.vertex(a), g.vertex(b));
      queue.push_back(b);
    }
  }
  for (int id = 0; id < g.size(); ++id) {
    if (!seen[static_cast<std::size_t>(id)]) {
      throw RegionDisconnected("region " + r.to_string() + " is disconnected: " +
                                   to_string(g.vertex(0)) + " cannot reach " +
                                   to_string(g.vertex(id)),
                               g.vertex(0), g.vertex(id));
    }
  }
  std::sort(tree.edges.begin(), tree.edges.end());
  return tree;
}

RegionGraph::RegionGraph(const RegionSpec& r, std::uint64_t guard)
    : spec_(r), dense_(r.kind() == RegionSpec::Kind::whole) {
  vertices_ = region_members(r, guard);
  const int n = r.arity();
  offsets_.reserve(vertices_.size() + 1);
  offsets_.push_back(0);
  for (int id = 0; id < size(); ++id) {
    const std::size_t begin = adjacency_.size();
    for (int i = 1; i < n; ++i) {
      const int nb = index_of(vertices_[static_cast<std::size_t>(id)].swap_adjacent(i));
      if (nb >= 0) adjacency_.push_back(nb);
    }
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(begin), adjacency_.end());
    offsets_.push_back(adjacency_.size());
  }
}

int RegionGraph::index_of(const Permutation& u) const {
  if (u.arity() != arity()) return -1;
  if (dense_) return static_cast<int>(rank(u));
  const auto it = std::lower_bound(vertices_.begin(), vertices_.end(), u);
  if (it == vertices_.end() || *it != u) return -1;
  return static_cast<int>(it - vertices_.begin());
}

int RegionGraph::swap_adjacent(int id, int i) const {
  return index_of(vertex(id).swap_adjacent(i));
}

std::string export_dot(const RegionSpec& r, const TreePacking* overlay) {
  static const char* const kPalette[] = {"red",    "blue",  "darkgreen", "orange",
                                         "purple", "brown", "magenta",   "cyan",
                                         "gold",   "gray40"};
  const RegionGraph g(r);
  std::ostringstream out;
  out << "graph B" << r.arity() << " {\n";
  out << "  label=\"" << r.to_string() << "\";\n";
  out << "  node [shape=box, fontname=\"monospace\"];\n";

  std::vector<Permutation> terminals;
  if (overlay) terminals = overlay->terminals;
  for (int id = 0; id < g.size(); ++id) {
    const auto& u = g.vertex(id);
    out << "  \"" << to_string(u) << "\"";
    if (std::find(terminals.begin(), terminals.end(), u) != terminals.end()) {
      out << " [style=filled, fillcolor=yellow]";
    }
    out << ";\n";
  }

  std::vector<std::pair<Edge, std::size_t>> colored;
  if (overlay) {
    for (std::size_t t = 0; t < overlay->trees.size(); ++t) {
      for (const auto& e : overlay->trees[t].edges) colored.emplace_back(e, t);
    }
    std::sort(colored.begin(), colored.end());
  }
  auto tree_of = [&](const Edge& e) -> long {
    auto it = std::lower_bound(colored.begin(), colored.end(), std::make_pair(e, std::size_t{0}));
    if (it == colored.end() || !(it->first == e)) return -1;
    return static_cast<long>(it->second);
  };

  for (int a = 0; a < g.size(); ++a) {
    for (int b : g.neighbors(a)) {
      if (b < a) continue;
      const Edge e(g.vertex(a), g.vertex(b));
      out << "  \"" << to_string(e.a) << "\" -- \"" << to_string(e.b) << "\"";
      const long t = tree_of(e);
      if (t >= 0) {
        out << " [color=" << kPalette[static_cast<std::size_t>(t) % std::size(kPalette)]
            << ", penwidth=2.5]";
      }
      out << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace bubblepack
