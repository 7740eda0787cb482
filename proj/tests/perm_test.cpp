#include <gtest/gtest.h>

#include <random>
#include <set>

#include "bubblepack/perm.hpp"
#include "naive.hpp"

using namespace bubblepack;

TEST(Compose, HandEvaluatedExamples) {
  EXPECT_EQ(compose({2, 1, 3}, {1, 3, 2}), (Permutation{2, 3, 1}));
  EXPECT_EQ(compose({3, 1, 2}, Permutation::identity(3)), (Permutation{3, 1, 2}));
  EXPECT_EQ(compose({2, 1}, {2, 1}), (Permutation{1, 2}));
}

TEST(Compose, RejectsArityMismatch) {
  EXPECT_THROW(compose({2, 1, 3}, {1, 2}), std::invalid_argument);
}

TEST(Compose, AssociativeWithNeutralIdentity) {
  std::mt19937_64 rng(7);
  const auto perms = naive::all_perms(5);
  for (int t = 0; t < 300; ++t) {
    const auto& a = perms[rng() % perms.size()];
    const auto& b = perms[rng() % perms.size()];
    const auto& c = perms[rng() % perms.size()];
    EXPECT_EQ(compose(compose(a, b), c), compose(a, compose(b, c)));
    EXPECT_EQ(compose(a, Permutation::identity(5)), a);
    EXPECT_EQ(compose(Permutation::identity(5), a), a);
    EXPECT_EQ(compose(a, inverse(a)), Permutation::identity(5));
  }
}

TEST(Transposition, SwapsPositions) {
  EXPECT_EQ(apply_transposition({3, 1, 2}, Transposition(1, 2)), (Permutation{1, 3, 2}));
  EXPECT_EQ(apply_transposition({2, 1, 3}, Transposition(2, 3)), (Permutation{2, 3, 1}));
  const Permutation p{4, 2, 5, 1, 3};
  const Transposition t(2, 5);
  EXPECT_EQ(apply_transposition(apply_transposition(p, t), t), p);
}

TEST(Transposition, RejectsBadIndices) {
  EXPECT_THROW(Transposition(2, 2), std::invalid_argument);
  EXPECT_THROW(Transposition(0, 1), std::invalid_argument);
  EXPECT_THROW(apply_transposition({1, 2, 3}, Transposition(3, 4)), std::out_of_range);
}

TEST(Transposition, MatchesComposeOnAllArityFour) {
  for (const auto& p : naive::all_perms(4))
    for (int i = 1; i <= 4; ++i)
      for (int j = i + 1; j <= 4; ++j) {
        const Transposition t(i, j);
        EXPECT_EQ(apply_transposition(p, t), compose(p, as_permutation(t, 4)));
      }
}

TEST(Rank, SmallValues) {
  EXPECT_EQ(rank(Permutation::identity(4)), 0u);
  EXPECT_EQ(rank(Permutation{1, 2, 4, 3}), 1u);
  EXPECT_EQ(rank(Permutation{1, 2, 3, 5, 4}), 1u);
  EXPECT_EQ(unrank(0, 4), Permutation::identity(4));
  EXPECT_EQ(unrank(23, 4), (Permutation{4, 3, 2, 1}));
  EXPECT_THROW(unrank(24, 4), std::out_of_range);
}

TEST(Rank, AgreesWithLexicographicEnumeration) {
  for (int n = 2; n <= 6; ++n) {
    const auto perms = naive::all_perms(n);
    ASSERT_EQ(perms.size(), factorial(n));
    for (std::size_t r = 0; r < perms.size(); ++r) {
      EXPECT_EQ(rank(perms[r]), r);
      EXPECT_EQ(unrank(r, n), perms[r]);
    }
  }
}

TEST(Parity, InversionCount) {
  EXPECT_EQ(parity(Permutation::identity(5)), Parity::even);
  EXPECT_EQ(parity(Permutation::identity(5).swap_adjacent(2)), Parity::odd);
  std::mt19937_64 rng(11);
  const auto perms = naive::all_perms(6);
  for (int t = 0; t < 1000; ++t) {
    const auto& p = perms[rng() % perms.size()];
    const int i = 1 + static_cast<int>(rng() % 5);
    const int j = i + 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(6 - i));
    const auto q = apply_transposition(p, Transposition(i, j));
    EXPECT_NE(parity(q), parity(p));
    EXPECT_EQ(parity(p) == Parity::odd, naive::inversions(p) % 2 == 1);
  }
}

TEST(Text, RoundTripAndFormats) {
  EXPECT_EQ(to_string(Permutation{2, 1, 3}), "(2,1,3)");
  EXPECT_EQ(parse_permutation("(2, 1, 3)"), (Permutation{2, 1, 3}));
  EXPECT_EQ(parse_permutation("2,1,3"), (Permutation{2, 1, 3}));
  EXPECT_EQ(parse_permutation(" ( 3 1 2 ) "), (Permutation{3, 1, 2}));
  for (const auto& p : naive::all_perms(5)) EXPECT_EQ(parse_permutation(to_string(p)), p);
}

TEST(Text, RejectsNonBijections) {
  EXPECT_THROW(parse_permutation("(1,1,2)"), std::invalid_argument);
  EXPECT_THROW(parse_permutation("(1,2,4)"), std::invalid_argument);
  EXPECT_THROW(parse_permutation("(1,x,2)"), std::invalid_argument);
  EXPECT_THROW(parse_permutation(""), std::invalid_argument);
  EXPECT_THROW(Permutation({1, 3}), std::invalid_argument);
}
