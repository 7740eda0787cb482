#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>

namespace bubblepack {

// 12! still fits comfortably in a 64-bit rank.
inline constexpr int kMaxArity = 12;

// A permutation of [n] in one-line notation: position k (1-based) holds the
// symbol sigma(k).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::span<const int> seq);
  Permutation(std::initializer_list<int> seq);

  static Permutation identity(int n);

  int arity() const noexcept { return n_; }

  // Symbol at 1-based position.
  int operator()(int position) const noexcept { return seq_[position - 1]; }
  int at(int position) const;
  int last() const noexcept { return seq_[n_ - 1]; }

  std::span<const std::uint8_t> symbols() const noexcept {
    return {seq_.data(), static_cast<std::size_t>(n_)};
  }

  // Exchange the symbols at 1-based positions i and i+1. Unchecked.
  Permutation swap_adjacent(int i) const noexcept {
    Permutation r = *this;
    std::swap(r.seq_[i - 1], r.seq_[i]);
    return r;
  }

  // For equal arity this is rank (lexicographic) order.
  friend auto operator<=>(const Permutation&, const Permutation&) = default;
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::uint8_t n_ = 0;
  std::array<std::uint8_t, kMaxArity> seq_{};

  friend Permutation unrank(std::uint64_t r, int n);
};

struct Transposition {
  int i;
  int j;

  Transposition(int i, int j);
  static Transposition adjacent(int i) { return {i, i + 1}; }
};

std::uint64_t factorial(int n);

// (sigma pi)(k) = sigma(pi(k)).
Permutation compose(const Permutation& sigma, const Permutation& pi);

// sigma . [i,j]: exchanges the entries at positions i and j.
Permutation apply_transposition(const Permutation& sigma, const Transposition& t);

Permutation as_permutation(const Transposition& t, int n);

Permutation inverse(const Permutation& sigma);

// Lehmer-code rank; identical to lexicographic order, identity -> 0.
std::uint64_t rank(const Permutation& sigma);
Permutation unrank(std::uint64_t r, int n);

enum class Parity { even, odd };
Parity parity(const Permutation& sigma);

// "(2,1,3)"
std::string to_string(const Permutation& sigma);
// Accepts "(2, 1, 3)", "2,1,3" or "(2 1 3)". Throws std::invalid_argument.
Permutation parse_permutation(std::string_view text);

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

}  // namespace bubblepack
