#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace bubblepack {

// Uniform integer in [0, bound) from raw mt19937_64 output by rejection, so
// the stream is identical on every standard library.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

// `count` distinct values in [0, bound), in draw order.
inline std::vector<std::uint64_t> distinct_below(std::mt19937_64& rng, std::uint64_t bound,
                                                 std::size_t count) {
  std::vector<std::uint64_t> out;
  while (out.size() < count) {
    const std::uint64_t x = uniform_below(rng, bound);
    bool fresh = true;
    for (auto y : out) fresh = fresh && y != x;
    if (fresh) out.push_back(x);
  }
  return out;
}

}  // namespace bubblepack
