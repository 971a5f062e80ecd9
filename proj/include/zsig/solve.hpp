#pragma once

// Maximin values, best responses, and linear programs over the faces of
// optimal strategies.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "zsig/game.hpp"
#include "zsig/lp.hpp"

namespace zsig {

template <class T>
struct GameSolution {
  T value{};
  MixedStrategy<T> alice;
  MixedStrategy<T> bob;
};

namespace detail {

template <class T>
void clean_distribution(std::vector<T>& w) {
  if constexpr (!Numeric<T>::exact) {
    T total(0);
    for (T& v : w) {
      if (v < T(0)) v = T(0);
      total += v;
    }
    if (total > T(0))
      for (T& v : w) v /= total;
  }
}

}  // namespace detail

// Maximin via the LP  max sum(q)  s.t.  (M + shift) q <= 1, q >= 0  with the
// shift making every entry >= 1.  Bob's strategy is q normalized; Alice's is
// read from the slack reduced costs.  The shift depends only on the spread of
// entries, so M and M + cJ go through identical pivots.
template <class T>
GameSolution<T> solve_value(const ZeroSumMatrix<T>& game) {
  const std::size_t rows = game.rows();
  const std::size_t cols = game.cols();
  if (rows == 0 || cols == 0) throw InvalidInput("game has a zero dimension");

  std::vector<T> entries(rows * cols);
  T lowest{};
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      T v = game(r, c);
      if constexpr (!Numeric<T>::exact) {
        if (!std::isfinite(v)) throw InvalidInput("non-finite payoff");
      }
      entries[r * cols + c] = v;
      if ((r == 0 && c == 0) || v < lowest) lowest = v;
    }
  }
  const T shift = T(1) - lowest;

  detail::Tableau<T> tab(rows, cols + rows);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) tab.at(r, c) = entries[r * cols + c] + shift;
    tab.at(r, cols + r) = T(1);
    tab.rhs(r) = T(1);
    tab.basis()[r] = cols + r;
  }
  for (std::size_t c = 0; c < cols; ++c) tab.cost()[c] = T(1);
  std::vector<bool> allowed(cols + rows, true);
  std::size_t pivots = 0;
  if (!tab.optimize(allowed, pivots)) throw InternalError("maximin LP reported unbounded");

  const T total = T(-tab.cost()[cols + rows]);
  const T shifted_value = T(1) / total;

  GameSolution<T> sol;
  sol.bob.weights.assign(cols, T(0));
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t b = tab.basis()[r];
    if (b < cols) sol.bob.weights[b] = tab.rhs(r) * shifted_value;
  }
  sol.alice.weights.assign(rows, T(0));
  for (std::size_t r = 0; r < rows; ++r) sol.alice.weights[r] = T(-tab.cost()[cols + r]) * shifted_value;
  detail::clean_distribution(sol.alice.weights);
  detail::clean_distribution(sol.bob.weights);
  sol.value = shifted_value - shift;
  return sol;
}

// min over Bob's pure columns of Alice's expected payoff under `alice`.
template <class T>
T best_response_value(const ZeroSumMatrix<T>& game, const MixedStrategy<T>& alice,
                      std::size_t* argmin = nullptr) {
  if (alice.size() != game.rows()) throw InvalidInput("strategy dimension differs from row count");
  std::vector<std::size_t> support;
  for (std::size_t r = 0; r < alice.size(); ++r)
    if (alice[r] != T(0)) support.push_back(r);
  T best{};
  std::size_t best_col = 0;
  for (std::size_t c = 0; c < game.cols(); ++c) {
    T payoff(0);
    for (std::size_t r : support) payoff += alice[r] * game(r, c);
    if (c == 0 || payoff < best) {
      best = payoff;
      best_col = c;
    }
  }
  if (argmin) *argmin = best_col;
  return best;
}

// max over Alice's pure rows against a fixed Bob strategy.
template <class T>
T alice_best_response_value(const ZeroSumMatrix<T>& game, const MixedStrategy<T>& bob) {
  if (bob.size() != game.cols()) throw InvalidInput("strategy dimension differs from column count");
  std::vector<std::size_t> support;
  for (std::size_t c = 0; c < bob.size(); ++c)
    if (bob[c] != T(0)) support.push_back(c);
  T best{};
  for (std::size_t r = 0; r < game.rows(); ++r) {
    T payoff(0);
    for (std::size_t c : support) payoff += bob[c] * game(r, c);
    if (r == 0 || payoff > best) best = payoff;
  }
  return best;
}

template <class T>
T bilinear_payoff(const ZeroSumMatrix<T>& game, const MixedStrategy<T>& x, const MixedStrategy<T>& y) {
  if (x.size() != game.rows() || y.size() != game.cols()) throw InvalidInput("strategy dimension mismatch");
  T total(0);
  for (std::size_t r = 0; r < x.size(); ++r) {
    if (x[r] == T(0)) continue;
    T row(0);
    for (std::size_t c = 0; c < y.size(); ++c)
      if (y[c] != T(0)) row += game(r, c) * y[c];
    total += x[r] * row;
  }
  return total;
}

// Optimizes objective . x over Alice's optimal strategies
//   { x >= 0, sum x = 1, (M^T x)_c >= value - slack for all c }.
template <class T>
MixedStrategy<T> optimize_alice_face(const ZeroSumMatrix<T>& game, const T& value, const std::vector<T>& objective,
                                     bool maximize) {
  const std::size_t rows = game.rows();
  const std::size_t cols = game.cols();
  if (objective.size() != rows) throw InvalidInput("face objective dimension mismatch");
  LinearProgram<T> lp;
  lp.num_vars = rows;
  lp.objective.resize(rows);
  for (std::size_t r = 0; r < rows; ++r) lp.objective[r] = maximize ? objective[r] : T(-objective[r]);
  lp.add(std::vector<T>(rows, T(1)), Relation::Equal, T(1));
  const T bound = value - Numeric<T>::tolerance() * std::max(T(1), abs_value(value));
  for (std::size_t c = 0; c < cols; ++c) {
    std::vector<T> coeffs(rows);
    for (std::size_t r = 0; r < rows; ++r) coeffs[r] = game(r, c);
    lp.add(std::move(coeffs), Relation::GreaterEqual, bound);
  }
  auto res = solve_lp(lp);
  if (res.status != LpStatus::Optimal) throw InternalError("optimal face of Alice is empty");
  detail::clean_distribution(res.x);
  return MixedStrategy<T>{std::move(res.x)};
}

// Optimizes objective . y over Bob's optimal strategies
//   { y >= 0, sum y = 1, (M y)_r <= value + slack for all r }.
template <class T>
MixedStrategy<T> optimize_bob_face(const ZeroSumMatrix<T>& game, const T& value, const std::vector<T>& objective,
                                   bool maximize) {
  const std::size_t rows = game.rows();
  const std::size_t cols = game.cols();
  if (objective.size() != cols) throw InvalidInput("face objective dimension mismatch");
  LinearProgram<T> lp;
  lp.num_vars = cols;
  lp.objective.resize(cols);
  for (std::size_t c = 0; c < cols; ++c) lp.objective[c] = maximize ? objective[c] : T(-objective[c]);
  lp.add(std::vector<T>(cols, T(1)), Relation::Equal, T(1));
  const T bound = value + Numeric<T>::tolerance() * std::max(T(1), abs_value(value));
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<T> coeffs(cols);
    for (std::size_t c = 0; c < cols; ++c) coeffs[c] = game(r, c);
    lp.add(std::move(coeffs), Relation::LessEqual, bound);
  }
  auto res = solve_lp(lp);
  if (res.status != LpStatus::Optimal) throw InternalError("optimal face of Bob is empty");
  detail::clean_distribution(res.x);
  return MixedStrategy<T>{std::move(res.x)};
}

}  // namespace zsig
