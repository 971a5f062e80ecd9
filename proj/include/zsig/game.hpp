#pragma once

// Finite two-player zero-sum games.  Entries are Alice's payoffs; Bob
// receives their negation.  A matrix is either a dense row-major table or a
// deferred oracle, a pure function of (row, col) that is evaluated on demand.

#include <cstddef>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zsig/error.hpp"
#include "zsig/scalar.hpp"

namespace zsig {

// Default cap on the number of cells materialized for one posterior game.
inline constexpr std::size_t kDefaultCellBudget = std::size_t{1} << 20;

template <class T>
class ZeroSumMatrix {
 public:
  using Oracle = std::function<T(std::size_t, std::size_t)>;

  ZeroSumMatrix() = default;

  ZeroSumMatrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), dense_(std::make_shared<const std::vector<T>>(std::move(entries))) {
    if (rows_ == 0 || cols_ == 0) throw InvalidInput("matrix dimension is zero");
    if (dense_->size() != rows_ * cols_) {
      throw InvalidInput("matrix has " + std::to_string(dense_->size()) + " entries, expected " +
                         std::to_string(rows_ * cols_));
    }
  }

  // Convenience for literals: {{1, -1}, {-1, 1}}.
  ZeroSumMatrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    std::vector<T> entries;
    entries.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw InvalidInput("ragged matrix literal");
      entries.insert(entries.end(), row.begin(), row.end());
    }
    *this = ZeroSumMatrix(rows_, cols_, std::move(entries));
  }

  static ZeroSumMatrix from_oracle(std::size_t rows, std::size_t cols, Oracle oracle) {
    if (rows == 0 || cols == 0) throw InvalidInput("matrix dimension is zero");
    ZeroSumMatrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    m.oracle_ = std::make_shared<const Oracle>(std::move(oracle));
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t cells() const { return rows_ * cols_; }
  bool is_dense() const { return dense_ != nullptr; }

  T operator()(std::size_t r, std::size_t c) const {
    if (dense_) return (*dense_)[r * cols_ + c];
    return (*oracle_)(r, c);
  }

  // Dense entries; only valid when is_dense().
  const std::vector<T>& entries() const {
    if (!dense_) throw InvalidInput("matrix is not dense");
    return *dense_;
  }

  ZeroSumMatrix materialize(std::size_t cell_budget = kDefaultCellBudget) const {
    if (dense_) return *this;
    if (cells() > cell_budget) {
      throw SizeLimitExceeded("materializing " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                              " exceeds cell budget " + std::to_string(cell_budget));
    }
    std::vector<T> entries(cells());
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) entries[r * cols_ + c] = (*oracle_)(r, c);
    return ZeroSumMatrix(rows_, cols_, std::move(entries));
  }

  // -M^T: the same game with the players' roles swapped.
  ZeroSumMatrix negated_transpose() const {
    std::vector<T> entries(cells());
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) entries[c * rows_ + r] = T(-(*this)(r, c));
    return ZeroSumMatrix(cols_, rows_, std::move(entries));
  }

  ZeroSumMatrix shifted(const T& constant) const {
    std::vector<T> entries(cells());
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) entries[r * cols_ + c] = (*this)(r, c) + constant;
    return ZeroSumMatrix(rows_, cols_, std::move(entries));
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::shared_ptr<const std::vector<T>> dense_;
  std::shared_ptr<const Oracle> oracle_;
};

template <class T>
struct MixedStrategy {
  std::vector<T> weights;

  std::size_t size() const { return weights.size(); }
  const T& operator[](std::size_t i) const { return weights[i]; }

  static MixedStrategy pure(std::size_t n, std::size_t index) {
    MixedStrategy s{std::vector<T>(n, T(0))};
    s.weights.at(index) = T(1);
    return s;
  }
  static MixedStrategy uniform(std::size_t n) {
    return MixedStrategy{std::vector<T>(n, T(1) / T(static_cast<long>(n)))};
  }
};

// Nonnegative and summing to one: exactly for rationals, within 1e-12 for
// doubles.
template <class T>
void validate_distribution(const std::vector<T>& weights, const std::string& what) {
  if (weights.empty()) throw InvalidInput(what + " is empty");
  T total(0);
  for (const T& w : weights) {
    if (w < T(0)) throw InvalidInput(what + " has a negative weight");
    total += w;
  }
  if constexpr (Numeric<T>::exact) {
    if (total != T(1)) throw InvalidInput(what + " does not sum to 1");
  } else {
    if (std::abs(total - 1.0) > 1e-12) throw InvalidInput(what + " does not sum to 1");
  }
}

template <class T>
struct GameState {
  std::string id;
  ZeroSumMatrix<T> matrix;
};

// States of nature sharing one strategy space, plus a public prior.
template <class T>
class BayesianGame {
 public:
  BayesianGame() = default;
  BayesianGame(std::vector<GameState<T>> states, std::vector<T> prior)
      : states_(std::move(states)), prior_(std::move(prior)) {
    if (states_.empty()) throw InvalidInput("game has no states");
    if (prior_.size() != states_.size()) throw InvalidInput("prior length differs from state count");
    validate_distribution(prior_, "prior");
    for (const auto& s : states_) {
      if (s.matrix.rows() != rows() || s.matrix.cols() != cols()) {
        throw InvalidInput("state '" + s.id + "' has mismatched dimensions");
      }
    }
  }

  std::size_t num_states() const { return states_.size(); }
  std::size_t rows() const { return states_.front().matrix.rows(); }
  std::size_t cols() const { return states_.front().matrix.cols(); }
  const std::vector<GameState<T>>& states() const { return states_; }
  const GameState<T>& state(std::size_t s) const { return states_.at(s); }
  const std::vector<T>& prior() const { return prior_; }

  std::optional<std::size_t> find_state(const std::string& id) const {
    for (std::size_t s = 0; s < states_.size(); ++s)
      if (states_[s].id == id) return s;
    return std::nullopt;
  }

 private:
  std::vector<GameState<T>> states_;
  std::vector<T> prior_;
};

// E[M | weights]: entrywise convex combination, dense.
template <class T>
ZeroSumMatrix<T> expected_matrix(const BayesianGame<T>& game, const std::vector<T>& weights,
                                 std::size_t cell_budget = kDefaultCellBudget) {
  if (weights.size() != game.num_states()) throw InvalidInput("weight vector length differs from state count");
  validate_distribution(weights, "state weights");
  const std::size_t rows = game.rows();
  const std::size_t cols = game.cols();
  if (rows * cols > cell_budget) {
    throw SizeLimitExceeded("posterior game " + std::to_string(rows) + "x" + std::to_string(cols) +
                            " exceeds cell budget " + std::to_string(cell_budget));
  }
  std::vector<T> entries(rows * cols, T(0));
  for (std::size_t s = 0; s < game.num_states(); ++s) {
    const T& w = weights[s];
    if (w == T(0)) continue;
    const auto& m = game.state(s).matrix;
    if (m.is_dense()) {
      const auto& src = m.entries();
      for (std::size_t i = 0; i < entries.size(); ++i) entries[i] += w * src[i];
    } else {
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) entries[r * cols + c] += w * m(r, c);
    }
  }
  return ZeroSumMatrix<T>(rows, cols, std::move(entries));
}

}  // namespace zsig
