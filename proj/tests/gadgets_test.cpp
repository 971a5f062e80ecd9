#include <random>

#include <gtest/gtest.h>

#include "zsig/codec.hpp"
#include "zsig/gadgets.hpp"

namespace zsig {
namespace {

TEST(PairwiseBit, Examples) {
  AuxBits zero{2, 2, std::vector<std::uint8_t>(4, 0)};
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) EXPECT_EQ(pairwise_bit(zero, {a, b}), 0);
  // Rows are labels, columns positions: [[1,0],[0,0]].
  AuxBits table{2, 2, {1, 0, 0, 0}};
  EXPECT_EQ(pairwise_bit(table, {0, 0}), 1 ^ 0);
  EXPECT_THROW(pairwise_bit(table, {0}), InvalidInput);
}

TEST(PairwiseBit, FlippingASelectedEntryFlipsTheOutput) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    auto table = AuxBits::from_integer(rng(), 3, 4);
    std::vector<std::size_t> v{rng() % 3, rng() % 3, rng() % 3, rng() % 3};
    const std::size_t l = rng() % 4;
    auto flipped = table;
    flipped.bits[v[l] * 4 + l] ^= 1;
    EXPECT_NE(pairwise_bit(table, v), pairwise_bit(flipped, v));
  }
}

TEST(PairwiseBit, PairwiseIndependentOverAllTables) {
  std::vector<std::vector<std::size_t>> vectors{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      if (a == b) continue;
      int counts[2][2] = {{0, 0}, {0, 0}};
      for (std::uint64_t packed = 0; packed < 16; ++packed) {
        auto table = AuxBits::from_integer(packed, 2, 2);
        ++counts[pairwise_bit(table, vectors[a])][pairwise_bit(table, vectors[b])];
      }
      for (auto& row : counts)
        for (int c : row) EXPECT_EQ(c, 4);
    }
}

std::vector<Rational> parse_distribution(std::initializer_list<const char*> xs) {
  std::vector<Rational> out;
  for (const char* x : xs) out.push_back(parse_scalar<Rational>(x));
  return out;
}

TEST(BestHalfSet, Examples) {
  auto uniform = best_half_set(std::vector<Rational>(4, Rational(1, 4)));
  EXPECT_EQ(uniform.advantage, 0);
  auto point = best_half_set(std::vector<Rational>{0, 0, 1, 0});
  EXPECT_EQ(point.members, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(point.advantage, Rational(1, 2));
  auto p = parse_distribution({".4", ".2", ".1", ".1", ".1", ".1"});
  auto six = best_half_set(p);
  EXPECT_EQ(six.members, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(six.advantage, Rational(1, 5));
  // Half the L1 distance to uniform: (7/30 + 1/30 + 4 * 1/15) / 2.
  EXPECT_EQ(total_variation_from_uniform(p), Rational(4, 15));
  EXPECT_GE(six.advantage, total_variation_from_uniform(p) / 2);
  EXPECT_THROW(best_half_set(std::vector<Rational>{1, 0, 0}), InvalidInput);
}

TEST(BestHalfSet, BeatsEverySubsetAndHalfTheDistance) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> half(1, 6), weight(0, 20);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 2 * half(rng);
    std::vector<Rational> p(n);
    Rational total = 0;
    for (auto& x : p) total += (x = weight(rng));
    if (total == 0) continue;
    for (auto& x : p) x /= total;
    auto hs = best_half_set(p);
    Rational best = -1;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcountll(mask)) != n / 2) continue;
      Rational mass = 0;
      for (std::size_t x = 0; x < n; ++x)
        if (mask >> x & 1) mass += p[x];
      best = std::max(best, mass - Rational(1, 2));
    }
    EXPECT_EQ(hs.advantage, best);
    EXPECT_GE(hs.advantage, total_variation_from_uniform(p) / 2);
  }
}

// Two blocks {0,1} and {2,3} over a 4-cycle with the given relation.
struct Fixture {
  Csp2Instance csp;
  Partition partition;
};

Fixture cycle_fixture(const std::vector<bool>& relation) {
  std::vector<CspEdge> edges;
  for (std::size_t x = 0; x < 4; ++x) edges.push_back({x, (x + 1) % 4, relation});
  Fixture f{Csp2Instance(4, 2, 2, edges), {}};
  f.partition = greedy_partition(f.csp, 2);
  return f;
}

TEST(TauAdditive, DifferentShiftsZeroEverything) {
  auto f = cycle_fixture(equality_relation(2));
  BlockChecker checker(f.csp, f.partition);
  auto tau = tau_additive(checker, 2, {0, 0, 0, 0}, {1, 0, 0, 0}, 0, {0, 0, 0, 0}, 0, {0, 0, 0, 0}, 0, {0, 0, 0, 0});
  EXPECT_FALSE(tau.alice_nature || tau.bob_nature || tau.alice_bob);
}

TEST(TauAdditive, IdenticalAssignmentsOnOneBlock) {
  auto f = parse_csp("csp 2 2 1\n0 1 : 0,0 1,1\n");
  Partition whole = greedy_partition(f, 2);
  ASSERT_EQ(whole.blocks.size(), 1u);
  BlockChecker checker(f, whole);
  const std::vector<std::size_t> v{1, 0, 0, 0}, w{1, 1, 0, 1};
  // v + w = (0, 1, ...) violates equality; v + (0, 1) = (1, 1) satisfies it.
  auto tau = tau_additive(checker, 2, v, v, 0, {0, 1, 0, 0}, 0, w, 0, {0, 1, 0, 0});
  EXPECT_TRUE(tau.alice_nature);
  EXPECT_FALSE(tau.bob_nature);
  EXPECT_FALSE(tau.alice_bob);
  // Same block, conflicting labels on a shared variable count as a violation.
  EXPECT_FALSE(checker.consistent(0, {1, 1}, 0, {0, 0}));
}

TEST(TauAdditive, CrossEdgeViolation) {
  auto f = cycle_fixture(equality_relation(2));
  ASSERT_EQ(f.partition.blocks[0], (std::vector<std::size_t>{0, 2}));
  BlockChecker checker(f.csp, f.partition);
  // Blocks are {0,2} and {1,3}; every cycle edge crosses them.  Labels 0 on
  // block 0 and (0,1) on block 1 break edges (2,3) and (3,0).
  EXPECT_TRUE(checker.consistent(0, {0, 0}, 1, {0, 0}));
  EXPECT_FALSE(checker.consistent(0, {0, 0}, 1, {0, 1}));
  const std::vector<std::size_t> v{0, 0};
  auto tau = tau_additive(checker, 2, v, v, 0, {0, 0}, 1, {0, 0}, 1, {0, 1});
  EXPECT_FALSE(tau.alice_nature);
  EXPECT_FALSE(tau.bob_nature);
  EXPECT_TRUE(tau.alice_bob);
  EXPECT_THROW(checker.consistent(0, {0}, 1, {0, 0}), InvalidInput);
}

TEST(TauAdditive, InvariantUnderCommonShiftForCyclicRelations) {
  // x - y = 1 mod 3 is closed under adding a constant to both labels.
  std::vector<bool> rel(9, false);
  for (std::size_t a = 0; a < 3; ++a) rel[a * 3 + (a + 2) % 3] = true;
  std::vector<CspEdge> edges;
  for (std::size_t x = 0; x < 6; ++x) edges.push_back({x, (x + 1) % 6, rel});
  Csp2Instance csp(6, 3, 2, edges);
  auto partition = greedy_partition(csp, 2);
  BlockChecker checker(csp, partition);
  std::mt19937_64 rng(12);
  const std::size_t len = checker.block_length();
  auto draw = [&] {
    std::vector<std::size_t> x(len);
    for (auto& e : x) e = rng() % 3;
    return x;
  };
  for (int t = 0; t < 300; ++t) {
    auto v = draw(), wa = draw(), wb = draw(), u = draw();
    std::size_t ja = rng() % 3, jb = rng() % 3, i = rng() % 3;
    auto base = tau_additive(checker, 3, v, v, ja, wa, jb, wb, i, u);
    const std::size_t c = 1 + rng() % 2;
    std::vector<std::size_t> shift(len, c);
    auto moved = tau_additive(checker, 3, shift_labels(v, shift, 3), shift_labels(v, shift, 3), ja,
                              shift_labels(wa, shift, 3), jb, shift_labels(wb, shift, 3), i, shift_labels(u, shift, 3));
    EXPECT_EQ(base.alice_nature, moved.alice_nature);
    EXPECT_EQ(base.bob_nature, moved.bob_nature);
    EXPECT_EQ(base.alice_bob, moved.alice_bob);
  }
}

TEST(TauMultiplicative, Examples) {
  auto eq = parse_csp("csp 4 2 1\n0 1 : 0,0 1,1\n2 3 : 0,0 1,1\n");
  EXPECT_FALSE(tau_multiplicative(eq, 0, 0, 0, 0, 1, 0, 2, 0).alice_nature);
  EXPECT_TRUE(tau_multiplicative(eq, 0, 0, 0, 1, 1, 0, 1, 1).alice_nature);
  auto ne = parse_csp("csp 2 2 1\n0 1 : 0,1\n");
  // v=1, w=1 gives label 0 on variable 0; v=1, u=0 gives label 1 on variable 1.
  EXPECT_TRUE(tau_multiplicative(ne, 1, 1, 0, 1, 0, 1, 1, 0).alice_nature);
  EXPECT_FALSE(tau_multiplicative(ne, 1, 0, 0, 1, 0, 1, 1, 0).alice_nature);
}

TEST(Codec, MixedRadixRoundTrip) {
  MixedRadix r({3, 1, 4, 2});
  EXPECT_EQ(r.size(), 24u);
  for (std::size_t x = 0; x < r.size(); ++x) EXPECT_EQ(r.encode(r.decode(x)), x);
  EXPECT_EQ(r.decode(1), (std::vector<std::size_t>{0, 0, 0, 1}));
  EXPECT_THROW(r.decode(24), InvalidInput);
  EXPECT_THROW(MixedRadix({1u << 31, 1u << 31, 1u << 31}), SizeLimitExceeded);
}

TEST(Codec, CombinationsAreLexicographic) {
  for (std::size_t n = 1; n <= 7; ++n)
    for (std::size_t k = 0; k <= n; ++k) {
      std::vector<std::size_t> previous;
      for (std::size_t r = 0; r < binomial(n, k); ++r) {
        auto c = combination_unrank(r, n, k);
        EXPECT_EQ(c.size(), k);
        EXPECT_EQ(combination_rank(c, n), r);
        if (r > 0) EXPECT_LT(previous, c);
        previous = c;
      }
    }
  EXPECT_THROW(combination_rank({2, 1}, 4), InvalidInput);
}

}  // namespace
}  // namespace zsig
