#pragma once

// Dishonest signaling: players commit to the alleged scheme's posteriors and
// pick an equilibrium of each alleged posterior game, while states are
// actually signaled through the real scheme.

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "zsig/error.hpp"
#include "zsig/parallel.hpp"
#include "zsig/signaling.hpp"
#include "zsig/solve.hpp"

namespace zsig {

enum class EquilibriumPolicy { Canonical, Pessimistic, Optimistic };

inline const char* policy_name(EquilibriumPolicy p) {
  switch (p) {
    case EquilibriumPolicy::Canonical: return "canonical";
    case EquilibriumPolicy::Pessimistic: return "pessimistic";
    case EquilibriumPolicy::Optimistic: return "optimistic";
  }
  return "unknown";
}

inline EquilibriumPolicy parse_policy(const std::string& name) {
  if (name == "canonical" || name == "solver-canonical") return EquilibriumPolicy::Canonical;
  if (name == "pessimistic" || name == "alice-pessimistic") return EquilibriumPolicy::Pessimistic;
  if (name == "optimistic" || name == "alice-optimistic") return EquilibriumPolicy::Optimistic;
  throw InvalidInput("unknown equilibrium policy '" + name + "'");
}

inline constexpr EquilibriumPolicy kAllPolicies[] = {EquilibriumPolicy::Pessimistic, EquilibriumPolicy::Canonical,
                                                     EquilibriumPolicy::Optimistic};

template <class T>
struct DishonestScheme {
  SignalingScheme<T> alleged;
  SignalingScheme<T> real;
};

template <class T>
struct SelectedEquilibrium {
  MixedStrategy<T> alice;
  MixedStrategy<T> bob;
  T alleged_value{};
  T real_payoff{};
  std::size_t rounds = 0;
};

inline constexpr std::size_t kMaxSelectionRounds = 50;

// Picks an equilibrium (x, y) of `alleged` and reports x'Ry for R = `real`.
// Canonical returns the solver's pair.  The other policies start there and
// alternately re-optimize y over Bob's optimal face and x over Alice's,
// moving x'Ry down (pessimistic) or up (optimistic) until neither step
// improves.  The bilinear objective makes the result a local extremum over
// the product of faces; it is exact whenever either face is a single point.
template <class T>
SelectedEquilibrium<T> equilibrium_select(const ZeroSumMatrix<T>& alleged, const ZeroSumMatrix<T>& real,
                                          EquilibriumPolicy policy) {
  if (alleged.rows() != real.rows() || alleged.cols() != real.cols())
    throw InvalidInput("alleged and real games differ in shape");
  auto sol = solve_value(alleged);
  SelectedEquilibrium<T> out{sol.alice, sol.bob, sol.value, bilinear_payoff(real, sol.alice, sol.bob), 0};
  if (policy == EquilibriumPolicy::Canonical) return out;

  const bool maximize = policy == EquilibriumPolicy::Optimistic;
  auto improves = [&](const T& candidate, const T& incumbent) {
    const T margin = Numeric<T>::eps() * std::max(T(1), abs_value(incumbent));
    return maximize ? candidate > incumbent + margin : candidate < incumbent - margin;
  };
  const std::size_t rows = real.rows(), cols = real.cols();
  for (std::size_t round = 0; round < kMaxSelectionRounds; ++round) {
    bool moved = false;

    std::vector<T> column_weight(cols, T(0));
    for (std::size_t r = 0; r < rows; ++r) {
      if (out.alice[r] == T(0)) continue;
      for (std::size_t c = 0; c < cols; ++c) column_weight[c] += out.alice[r] * real(r, c);
    }
    auto y = optimize_bob_face(alleged, out.alleged_value, column_weight, maximize);
    T payoff = bilinear_payoff(real, out.alice, y);
    if (improves(payoff, out.real_payoff)) {
      out.bob = std::move(y);
      out.real_payoff = payoff;
      moved = true;
    }

    std::vector<T> row_weight(rows, T(0));
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c)
        if (out.bob[c] != T(0)) row_weight[r] += real(r, c) * out.bob[c];
    auto x = optimize_alice_face(alleged, out.alleged_value, row_weight, maximize);
    payoff = bilinear_payoff(real, x, out.bob);
    if (improves(payoff, out.real_payoff)) {
      out.alice = std::move(x);
      out.real_payoff = payoff;
      moved = true;
    }
    out.rounds = round + 1;
    if (!moved) break;
  }
  return out;
}

template <class T>
struct LyingSignalRecord {
  std::string signal_id;
  T alleged_probability{};
  T real_probability{};
  std::vector<T> alleged_posterior;
  SelectedEquilibrium<T> equilibrium;
  // Pr_real[signal] * x' E_real[M | signal] y.
  T contribution{};
};

template <class T>
struct LyingEvaluation {
  EquilibriumPolicy policy = EquilibriumPolicy::Pessimistic;
  T value{};
  std::vector<LyingSignalRecord<T>> signals;
};

namespace detail {

// Column of `scheme` carrying each alleged signal id, or npos.
template <class T>
std::vector<std::size_t> match_signals(const SignalingScheme<T>& alleged, const SignalingScheme<T>& real) {
  std::vector<std::size_t> column(alleged.signals.size(), static_cast<std::size_t>(-1));
  for (std::size_t k = 0; k < alleged.signals.size(); ++k)
    if (auto hit = real.find_signal(alleged.signals[k])) column[k] = *hit;
  return column;
}

}  // namespace detail

// Throws InvalidInput unless every signal the real scheme can emit is also
// emitted with positive probability by the alleged scheme.
template <class T>
void validate_dishonest(const BayesianGame<T>& game, const DishonestScheme<T>& ds) {
  const auto real_row = detail::align_scheme(game, ds.real);
  const auto alleged_row = detail::align_scheme(game, ds.alleged);
  std::vector<bool> alleged_used(ds.alleged.signals.size(), false);
  for (std::size_t s = 0; s < game.num_states(); ++s) {
    if (game.prior()[s] == T(0)) continue;
    for (std::size_t k = 0; k < ds.alleged.signals.size(); ++k)
      if (ds.alleged.kernel[alleged_row[s]][k] != T(0)) alleged_used[k] = true;
  }
  for (std::size_t s = 0; s < game.num_states(); ++s) {
    if (game.prior()[s] == T(0)) continue;
    for (std::size_t k = 0; k < ds.real.signals.size(); ++k) {
      if (ds.real.kernel[real_row[s]][k] == T(0)) continue;
      auto hit = ds.alleged.find_signal(ds.real.signals[k]);
      if (!hit || !alleged_used[*hit]) {
        throw InvalidInput("real signal '" + ds.real.signals[k] + "' lies outside the alleged support");
      }
    }
  }
}

template <class T>
LyingEvaluation<T> lying_value(const BayesianGame<T>& game, const DishonestScheme<T>& ds,
                               EquilibriumPolicy policy = EquilibriumPolicy::Pessimistic, std::size_t jobs = 1,
                               std::size_t cell_budget = kDefaultCellBudget) {
  validate_dishonest(game, ds);
  const auto real_row = detail::align_scheme(game, ds.real);
  const auto column = detail::match_signals(ds.alleged, ds.real);
  auto parts = decompose(game, ds.alleged);

  std::vector<LyingSignalRecord<T>> records(parts.size());
  parallel_for(parts.size(), jobs, [&](std::size_t p) {
    auto& rec = records[p];
    rec.signal_id = parts[p].signal_id;
    rec.alleged_probability = parts[p].probability;
    rec.alleged_posterior = parts[p].posterior;
    std::vector<T> joint(game.num_states(), T(0));
    const std::size_t k = column[parts[p].signal];
    if (k != static_cast<std::size_t>(-1))
      for (std::size_t s = 0; s < game.num_states(); ++s) joint[s] = game.prior()[s] * ds.real.kernel[real_row[s]][k];
    for (const T& w : joint) rec.real_probability += w;
    const auto alleged_game = expected_matrix(game, parts[p].posterior, cell_budget);
    if (rec.real_probability == T(0)) {
      auto sol = solve_value(alleged_game);
      rec.equilibrium = {sol.alice, sol.bob, sol.value, T(0), 0};
      return;
    }
    std::vector<T> normalized(joint);
    for (T& w : normalized) w /= rec.real_probability;
    const auto real_game = expected_matrix(game, normalized, cell_budget);
    rec.equilibrium = equilibrium_select(alleged_game, real_game, policy);
    rec.contribution = rec.real_probability * rec.equilibrium.real_payoff;
  });

  LyingEvaluation<T> out{policy, T(0), std::move(records)};
  for (const auto& rec : out.signals) out.value += rec.contribution;
  return out;
}

}  // namespace zsig
