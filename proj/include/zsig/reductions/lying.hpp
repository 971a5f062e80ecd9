#pragma once

// The dishonest-signaling construction.  With probability ε the players meet
// in a block game: a state of the multiplicative construction with the roles
// reversed, so Alice picks an honest Bob strategy, Bob picks an honest Alice
// strategy, and Bob has one extra column worth a constant κ = (c1 + c2)/2n to
// him.  Alice's block payoffs are shifted by +1.  With probability 1 - ε the
// state is degenerate: Alice gets 1 on any of Bob's honest columns and 0 on
// his extra column.
//
// Rows are honest Bob strategies, columns are honest Alice strategies
// followed by the extra column.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "zsig/dishonest.hpp"
#include "zsig/reductions/calibration.hpp"
#include "zsig/reductions/multiplicative.hpp"

namespace zsig {

inline const std::string kDegenerateState = "degenerate";
inline const std::string kBottomSignal = "bottom";

template <class T>
class LyingReduction {
 public:
  LyingReduction(const LyingReduction&) = delete;
  LyingReduction& operator=(const LyingReduction&) = delete;

  static std::shared_ptr<const LyingReduction> create(Csp2Instance csp, ReductionParams<T> params) {
    return std::shared_ptr<const LyingReduction>(new LyingReduction(std::move(csp), std::move(params)));
  }

  const MultiplicativeReduction<T>& honest() const { return *honest_; }
  const Csp2Instance& csp() const { return honest_->csp(); }
  const T& c1() const { return c1_; }
  const T& c2() const { return c2_; }
  const T& kappa() const { return kappa_; }
  const T& epsilon() const { return epsilon_; }
  // True when c2 came from the calibration sweep rather than the caller.
  bool c2_measured() const { return c2_measured_; }

  std::size_t num_block_states() const { return honest_->num_states(); }
  std::size_t num_states() const { return num_block_states() + 1; }
  std::size_t degenerate_index() const { return num_block_states(); }
  std::size_t rows() const { return honest_->num_bob(); }
  std::size_t cols() const { return honest_->num_alice() + 1; }
  std::size_t extra_column() const { return honest_->num_alice(); }

  std::string state_id(std::size_t s) const {
    return s == degenerate_index() ? kDegenerateState : "blk:" + honest_->state_id(s);
  }

  T payoff(std::size_t state, std::size_t row, std::size_t col) const {
    if (state == degenerate_index()) return col == extra_column() ? T(0) : T(1);
    if (col == extra_column()) return T(1) - kappa_;
    return T(1) - honest_->payoff(state, col, row);
  }

  BayesianGame<T> game(std::shared_ptr<const LyingReduction> self) const {
    if (self.get() != this) throw InvalidInput("game() needs the owning pointer");
    std::vector<GameState<T>> states;
    for (std::size_t s = 0; s < num_states(); ++s) {
      states.push_back({state_id(s), ZeroSumMatrix<T>::from_oracle(rows(), cols(), [self, s](std::size_t r, std::size_t c) {
                          return self->payoff(s, r, c);
                        })});
    }
    const T block = epsilon_ / T(static_cast<std::int64_t>(num_block_states()));
    std::vector<T> prior(num_block_states(), block);
    prior.push_back(T(1) - epsilon_);
    return BayesianGame<T>(std::move(states), std::move(prior));
  }

 private:
  LyingReduction(Csp2Instance csp, ReductionParams<T> params) {
    params.validate();
    const std::size_t n = csp.num_vars();
    const T d = params.delta;
    const T d3 = d * d * d;
    c1_ = params.c1.value_or(T(static_cast<std::int64_t>(csp.degree())) * (d3 - d3 * d + d3 * d * d));
    if (params.c2) {
      c2_ = *params.c2;
    } else {
      const Calibration& cal = calibrate(to_double(d));
      c2_ = c1_ * convert_scalar<T>(cal.ratio());
      c2_measured_ = true;
    }
    if (!(c1_ > c2_) || !(c2_ > T(0))) throw InvalidInput("lying construction needs c1 > c2 > 0");
    kappa_ = (c1_ + c2_) / T(static_cast<std::int64_t>(2 * n));
    if (params.epsilon) {
      epsilon_ = *params.epsilon;
    } else {
      if (n > 60) throw SizeLimitExceeded("default epsilon 2^-n underflows; pass epsilon");
      epsilon_ = T(1) / T(static_cast<std::int64_t>(std::int64_t{1} << n));
    }
    honest_ = MultiplicativeReduction<T>::create(std::move(csp), std::move(params));
  }

  std::shared_ptr<const MultiplicativeReduction<T>> honest_;
  T c1_{}, c2_{}, kappa_{}, epsilon_{};
  bool c2_measured_ = false;
};

// Alleged: the honest multiplicative signal on block states and bottom on the
// degenerate state.  Real: the lexicographically first honest signal
// everywhere.
template <class T>
DishonestScheme<T> lying_scheme_pair(const LyingReduction<T>& red, const Assignment& alpha) {
  const auto honest = multiplicative_completeness_scheme(red.honest(), alpha).scheme;
  std::vector<std::string> ids;
  for (std::size_t s = 0; s < red.num_states(); ++s) ids.push_back(red.state_id(s));
  auto signals = honest.signals;
  signals.push_back(kBottomSignal);
  std::vector<std::size_t> alleged(red.num_states());
  for (std::size_t s = 0; s < red.num_block_states(); ++s) {
    const auto& row = honest.kernel[s];
    alleged[s] = std::find(row.begin(), row.end(), T(1)) - row.begin();
  }
  alleged[red.degenerate_index()] = signals.size() - 1;
  const auto first = std::min_element(honest.signals.begin(), honest.signals.end()) - honest.signals.begin();
  return {SignalingScheme<T>::deterministic(ids, alleged, signals),
          SignalingScheme<T>::deterministic(ids, std::vector<std::size_t>(ids.size(), first), {honest.signals[first]})};
}

}  // namespace zsig
