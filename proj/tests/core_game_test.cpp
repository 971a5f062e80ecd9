#include <random>

#include <gtest/gtest.h>

#include "zsig/game.hpp"
#include "zsig/solve.hpp"

namespace zsig {
namespace {

Rational q(long p, long d = 1) { return Rational(p) / Rational(d); }

// Closed form for a 2x2 game without a pure saddle point: equalize Bob's
// column payoffs.
struct TwoByTwo {
  Rational alice_first;
  Rational value;
};
TwoByTwo analytic_2x2(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
  Rational p = (d - c) / (a - b - c + d);
  return {p, p * a + (1 - p) * c};
}

ZeroSumMatrix<double> random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  std::vector<double> e(rows * cols);
  for (auto& v : e) v = entry(rng);
  return ZeroSumMatrix<double>(rows, cols, std::move(e));
}

TEST(SolveValue, MatchingPennies) {
  ZeroSumMatrix<Rational> m{{1, -1}, {-1, 1}};
  auto sol = solve_value(m);
  EXPECT_EQ(sol.value, 0);
  EXPECT_EQ(sol.alice.weights, (std::vector<Rational>{q(1, 2), q(1, 2)}));
  EXPECT_EQ(sol.bob.weights, (std::vector<Rational>{q(1, 2), q(1, 2)}));
}

TEST(SolveValue, OneByOne) {
  ZeroSumMatrix<Rational> m{{5}};
  auto sol = solve_value(m);
  EXPECT_EQ(sol.value, 5);
  EXPECT_EQ(sol.alice.weights, std::vector<Rational>{1});
  EXPECT_EQ(sol.bob.weights, std::vector<Rational>{1});
}

TEST(SolveValue, TwoByTwoMatchesClosedForm) {
  auto oracle = analytic_2x2(3, 0, 1, 2);
  EXPECT_EQ(oracle.alice_first, q(1, 4));
  EXPECT_EQ(oracle.value, q(3, 2));
  ZeroSumMatrix<Rational> m{{3, 0}, {1, 2}};
  auto sol = solve_value(m);
  EXPECT_EQ(sol.value, oracle.value);
  EXPECT_EQ(sol.alice.weights[0], oracle.alice_first);
  EXPECT_EQ(sol.alice.weights[1], 1 - oracle.alice_first);
}

TEST(SolveValue, DoubleModeAgreesWithRational) {
  ZeroSumMatrix<double> m{{3, 0}, {1, 2}};
  auto sol = solve_value(m);
  EXPECT_NEAR(sol.value, 1.5, 1e-12);
  EXPECT_NEAR(sol.alice[0], 0.25, 1e-12);
}

TEST(SolveValue, RejectsZeroDimension) {
  EXPECT_THROW(ZeroSumMatrix<double>(0, 3, {}), InvalidInput);
  EXPECT_THROW(ZeroSumMatrix<double>::from_oracle(2, 0, [](std::size_t, std::size_t) { return 0.0; }),
               InvalidInput);
}

TEST(SolveValue, LazyOracleSolvesLikeDense) {
  auto lazy = ZeroSumMatrix<Rational>::from_oracle(
      2, 2, [](std::size_t r, std::size_t c) { return Rational(r == c ? 1 : -1); });
  EXPECT_FALSE(lazy.is_dense());
  EXPECT_EQ(solve_value(lazy).value, 0);
  EXPECT_TRUE(lazy.materialize().is_dense());
  EXPECT_THROW(lazy.materialize(3), SizeLimitExceeded);
}

TEST(BestResponse, Examples) {
  ZeroSumMatrix<Rational> pennies{{1, -1}, {-1, 1}};
  EXPECT_EQ(best_response_value(pennies, MixedStrategy<Rational>{{1, 0}}), -1);
  EXPECT_EQ(best_response_value(pennies, MixedStrategy<Rational>{{q(1, 2), q(1, 2)}}), 0);
  ZeroSumMatrix<Rational> m{{3, 0}, {1, 2}};
  EXPECT_EQ(best_response_value(m, MixedStrategy<Rational>{{q(1, 4), q(3, 4)}}), q(3, 2));
  EXPECT_THROW(best_response_value(m, MixedStrategy<Rational>{{1}}), InvalidInput);
}

TEST(ExpectedMatrix, Examples) {
  BayesianGame<Rational> two({{"a", {{1}}}, {"b", {{0}}}}, {q(1, 2), q(1, 2)});
  EXPECT_EQ(expected_matrix(two, {q(1, 2), q(1, 2)})(0, 0), q(1, 2));

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> entry(-9, 9);
  std::vector<GameState<Rational>> states;
  for (int s = 0; s < 3; ++s) {
    std::vector<Rational> e(4);
    for (auto& v : e) v = entry(rng);
    states.push_back({"s" + std::to_string(s), ZeroSumMatrix<Rational>(2, 2, e)});
  }
  BayesianGame<Rational> three(states, {q(1, 3), q(1, 3), q(1, 3)});
  auto point = expected_matrix(three, {0, 1, 0});
  EXPECT_EQ(point.entries(), states[1].matrix.entries());

  std::vector<Rational> w{q(2, 10), q(3, 10), q(5, 10)};
  auto mixed = expected_matrix(three, w);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) {
      Rational direct = 0;
      for (int s = 0; s < 3; ++s) direct += w[s] * states[s].matrix(r, c);
      EXPECT_EQ(mixed(r, c), direct);
    }
  EXPECT_THROW(expected_matrix(three, {q(1, 2), q(1, 2), q(1, 2)}), InvalidInput);
  EXPECT_THROW(expected_matrix(three, {q(3, 2), q(-1, 2), 0}), InvalidInput);
}

TEST(ExpectedMatrix, LinearInWeights) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> entry(-5, 5);
  std::vector<GameState<Rational>> states;
  for (int s = 0; s < 4; ++s) {
    std::vector<Rational> e(6);
    for (auto& v : e) v = entry(rng);
    states.push_back({std::to_string(s), ZeroSumMatrix<Rational>(2, 3, e)});
  }
  BayesianGame<Rational> g(states, {q(1, 4), q(1, 4), q(1, 4), q(1, 4)});
  std::vector<Rational> a{q(1, 2), q(1, 2), 0, 0}, b{0, q(1, 3), q(1, 3), q(1, 3)};
  Rational t = q(2, 7);
  std::vector<Rational> mix(4);
  for (int s = 0; s < 4; ++s) mix[s] = t * a[s] + (1 - t) * b[s];
  auto lhs = expected_matrix(g, mix);
  auto ea = expected_matrix(g, a), eb = expected_matrix(g, b);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(lhs.entries()[i], t * ea.entries()[i] + (1 - t) * eb.entries()[i]);
}

TEST(BayesianGame, RejectsBadPriorsAndShapes) {
  EXPECT_THROW(BayesianGame<double>({{"a", {{1}}}}, {0.5}), InvalidInput);
  EXPECT_THROW(BayesianGame<double>({{"a", {{1}}}, {"b", {{1, 2}}}}, {0.5, 0.5}), InvalidInput);
}

TEST(SolverProperties, DualityAntisymmetry) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> dim(1, 20);
  for (int trial = 0; trial < 60; ++trial) {
    auto m = random_matrix(rng, dim(rng), dim(rng));
    auto a = solve_value(m);
    auto b = solve_value(m.negated_transpose());
    EXPECT_NEAR(a.value, -b.value, 1e-8);
  }
}

TEST(SolverProperties, BestResponseNeverBeatsValue) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::size_t> dim(1, 12);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    auto m = random_matrix(rng, dim(rng), dim(rng));
    auto sol = solve_value(m);
    EXPECT_NEAR(best_response_value(m, sol.alice), sol.value, 1e-9);
    EXPECT_NEAR(alice_best_response_value(m, sol.bob), sol.value, 1e-9);
    std::vector<double> x(m.rows());
    double total = 0;
    for (auto& v : x) total += (v = unit(rng));
    for (auto& v : x) v /= total;
    EXPECT_LE(best_response_value(m, MixedStrategy<double>{x}), sol.value + 1e-9);
  }
}

TEST(SolverProperties, ShiftEquivarianceKeepsStrategies) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> entry(-6, 6);
  std::uniform_int_distribution<std::size_t> dim(1, 8);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t r = dim(rng), c = dim(rng);
    std::vector<double> e(r * c);
    for (auto& v : e) v = entry(rng);
    ZeroSumMatrix<double> m(r, c, e);
    auto base = solve_value(m);
    auto moved = solve_value(m.shifted(17.0));
    EXPECT_NEAR(moved.value, base.value + 17.0, 1e-9);
    EXPECT_EQ(moved.alice.weights, base.alice.weights);
    EXPECT_EQ(moved.bob.weights, base.bob.weights);
  }
}

TEST(SolverProperties, Deterministic) {
  std::mt19937_64 rng(1);
  auto m = random_matrix(rng, 9, 7);
  auto a = solve_value(m), b = solve_value(m);
  EXPECT_EQ(a.alice.weights, b.alice.weights);
  EXPECT_EQ(a.bob.weights, b.bob.weights);
  EXPECT_EQ(a.value, b.value);
}

TEST(OptimalFaces, FullSimplexForZeroGame) {
  ZeroSumMatrix<Rational> zero{{0, 0}, {0, 0}};
  // Bob's face is the whole simplex: minimizing the first coordinate picks e2.
  auto y = optimize_bob_face(zero, Rational(0), {1, 0}, false);
  EXPECT_EQ(y.weights, (std::vector<Rational>{0, 1}));
  auto x = optimize_alice_face(zero, Rational(0), {1, 0}, true);
  EXPECT_EQ(x.weights, (std::vector<Rational>{1, 0}));
}

TEST(OptimalFaces, FaceMembersAreOptimal) {
  ZeroSumMatrix<Rational> m{{1, 1, 0}, {1, 1, 2}, {0, 2, 1}};
  auto sol = solve_value(m);
  for (int target = 0; target < 3; ++target) {
    std::vector<Rational> obj(3, 0);
    obj[target] = 1;
    auto x = optimize_alice_face(m, sol.value, obj, true);
    auto y = optimize_bob_face(m, sol.value, obj, true);
    EXPECT_EQ(best_response_value(m, x), sol.value);
    EXPECT_EQ(alice_best_response_value(m, y), sol.value);
  }
}

}  // namespace
}  // namespace zsig
