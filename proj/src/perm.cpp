#include "bubblepack/perm.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <vector>

namespace bubblepack {

namespace {

void check_arity(std::size_t n) {
  if (n < 1 || n > static_cast<std::size_t>(kMaxArity)) {
    throw std::invalid_argument("permutation arity must be in [1, " +
                                std::to_string(kMaxArity) + "], got " +
                                std::to_string(n));
  }
}

}  // namespace

Permutation::Permutation(std::span<const int> seq) {
  check_arity(seq.size());
  n_ = static_cast<std::uint8_t>(seq.size());
  unsigned seen = 0;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    const int s = seq[k];
    if (s < 1 || s > n_) {
      throw std::invalid_argument("symbol " + std::to_string(s) +
                                  " outside [1, " + std::to_string(n_) + "]");
    }
    if (seen & (1u << s)) {
      throw std::invalid_argument("symbol " + std::to_string(s) +
                                  " appears twice");
    }
    seen |= 1u << s;
    seq_[k] = static_cast<std::uint8_t>(s);
  }
}

Permutation::Permutation(std::initializer_list<int> seq)
    : Permutation(std::span<const int>(seq.begin(), seq.size())) {}

Permutation Permutation::identity(int n) {
  check_arity(static_cast<std::size_t>(n));
  Permutation p;
  p.n_ = static_cast<std::uint8_t>(n);
  for (int k = 0; k < n; ++k) p.seq_[k] = static_cast<std::uint8_t>(k + 1);
  return p;
}

int Permutation::at(int position) const {
  if (position < 1 || position > n_) {
    throw std::out_of_range("position " + std::to_string(position) +
                            " outside [1, " + std::to_string(n_) + "]");
  }
  return seq_[position - 1];
}

Transposition::Transposition(int i_, int j_) : i(i_), j(j_) {
  if (i < 1 || j <= i) {
    throw std::invalid_argument("transposition needs 1 <= i < j, got [" +
                                std::to_string(i) + "," + std::to_string(j) +
                                "]");
  }
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

Permutation compose(const Permutation& sigma, const Permutation& pi) {
  if (sigma.arity() != pi.arity()) {
    throw std::invalid_argument("compose: arity mismatch (" +
                                std::to_string(sigma.arity()) + " vs " +
                                std::to_string(pi.arity()) + ")");
  }
  std::vector<int> out(static_cast<std::size_t>(sigma.arity()));
  for (int k = 1; k <= sigma.arity(); ++k) out[k - 1] = sigma(pi(k));
  return Permutation(out);
}

Permutation apply_transposition(const Permutation& sigma,
                                const Transposition& t) {
  if (t.j > sigma.arity()) {
    throw std::out_of_range("transposition [" + std::to_string(t.i) + "," +
                            std::to_string(t.j) + "] exceeds arity " +
                            std::to_string(sigma.arity()));
  }
  std::vector<int> out(sigma.symbols().begin(), sigma.symbols().end());
  std::swap(out[t.i - 1], out[t.j - 1]);
  return Permutation(out);
}

Permutation as_permutation(const Transposition& t, int n) {
  return apply_transposition(Permutation::identity(n), t);
}

Permutation inverse(const Permutation& sigma) {
  std::vector<int> out(static_cast<std::size_t>(sigma.arity()));
  for (int k = 1; k <= sigma.arity(); ++k) out[sigma(k) - 1] = k;
  return Permutation(out);
}

std::uint64_t rank(const Permutation& sigma) {
  const int n = sigma.arity();
  std::uint64_t r = 0;
  for (int i = 1; i <= n; ++i) {
    std::uint64_t smaller = 0;
    for (int j = i + 1; j <= n; ++j) {
      if (sigma(j) < sigma(i)) ++smaller;
    }
    r = r * static_cast<std::uint64_t>(n - i + 1) + smaller;
  }
  return r;
}

Permutation unrank(std::uint64_t r, int n) {
  check_arity(static_cast<std::size_t>(n));
  if (r >= factorial(n)) {
    throw std::out_of_range("rank " + std::to_string(r) + " outside [0, " +
                            std::to_string(factorial(n)) + ")");
  }
  std::array<int, kMaxArity> digits{};
  for (int i = n - 1; i >= 0; --i) {
    const auto base = static_cast<std::uint64_t>(n - i);
    digits[i] = static_cast<int>(r % base);
    r /= base;
  }
  std::array<std::uint8_t, kMaxArity> pool{};
  for (int k = 0; k < n; ++k) pool[k] = static_cast<std::uint8_t>(k + 1);
  int pool_size = n;
  Permutation p;
  p.n_ = static_cast<std::uint8_t>(n);
  for (int i = 0; i < n; ++i) {
    const int d = digits[i];
    p.seq_[i] = pool[d];
    for (int k = d; k + 1 < pool_size; ++k) pool[k] = pool[k + 1];
    --pool_size;
  }
  return p;
}

Parity parity(const Permutation& sigma) {
  int inversions = 0;
  for (int i = 1; i <= sigma.arity(); ++i) {
    for (int j = i + 1; j <= sigma.arity(); ++j) {
      if (sigma(i) > sigma(j)) ++inversions;
    }
  }
  return inversions % 2 == 0 ? Parity::even : Parity::odd;
}

std::string to_string(const Permutation& sigma) {
  std::string out = "(";
  for (int k = 1; k <= sigma.arity(); ++k) {
    if (k > 1) out += ',';
    out += std::to_string(sigma(k));
  }
  out += ')';
  return out;
}

Permutation parse_permutation(std::string_view text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  if (begin < end && text[begin] == '(') {
    if (text[end - 1] != ')') {
      throw std::invalid_argument("unbalanced parenthesis in '" +
                                  std::string(text) + "'");
    }
    ++begin;
    --end;
  }
  std::vector<int> seq;
  std::size_t k = begin;
  while (k < end) {
    const char c = text[k];
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      ++k;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("unexpected character '" + std::string(1, c) +
                                  "' in '" + std::string(text) + "'");
    }
    int value = 0;
    while (k < end && std::isdigit(static_cast<unsigned char>(text[k]))) {
      value = value * 10 + (text[k] - '0');
      if (value > 99) {
        throw std::invalid_argument("symbol too large in '" +
                                    std::string(text) + "'");
      }
      ++k;
    }
    seq.push_back(value);
  }
  if (seq.empty()) {
    throw std::invalid_argument("empty permutation '" + std::string(text) + "'");
  }
  return Permutation(seq);
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  return static_cast<std::size_t>(rank(p) * 0x9E3779B97F4A7C15ull) ^
         static_cast<std::size_t>(p.arity());
}

}  // namespace bubblepack
