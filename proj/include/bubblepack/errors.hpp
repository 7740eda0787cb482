#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bubblepack/perm.hpp"

namespace bubblepack {

// A size guard refused the request; `estimate` is the offending count.
class GuardExceeded : public std::runtime_error {
 public:
  GuardExceeded(const std::string& what, std::uint64_t estimate, std::uint64_t limit)
      : std::runtime_error(what), estimate_(estimate), limit_(limit) {}
  std::uint64_t estimate() const noexcept { return estimate_; }
  std::uint64_t limit() const noexcept { return limit_; }

 private:
  std::uint64_t estimate_;
  std::uint64_t limit_;
};

class RegionDisconnected : public std::runtime_error {
 public:
  RegionDisconnected(const std::string& what, Permutation a, Permutation b)
      : std::runtime_error(what), a_(a), b_(b) {}
  // One vertex from each of two different components.
  const Permutation& first_witness() const noexcept { return a_; }
  const Permutation& second_witness() const noexcept { return b_; }

 private:
  Permutation a_;
  Permutation b_;
};

// Fewer disjoint paths exist than requested. The cut separates the
// terminal sets inside the region and has fewer than `requested` vertices.
class PathsInfeasible : public std::runtime_error {
 public:
  PathsInfeasible(const std::string& what, std::size_t found, std::size_t requested,
                  std::vector<Permutation> cut, bool direct_edge)
      : std::runtime_error(what),
        found_(found),
        requested_(requested),
        cut_(std::move(cut)),
        direct_edge_(direct_edge) {}
  std::size_t found() const noexcept { return found_; }
  std::size_t requested() const noexcept { return requested_; }
  const std::vector<Permutation>& cut() const noexcept { return cut_; }
  // True when an edge joining the two terminals also crosses the cut.
  bool direct_edge() const noexcept { return direct_edge_; }

 private:
  std::size_t found_;
  std::size_t requested_;
  std::vector<Permutation> cut_;
  bool direct_edge_;
};

}  // namespace bubblepack
