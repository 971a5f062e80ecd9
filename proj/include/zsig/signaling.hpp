#pragma once

// Signaling schemes: Bayes posteriors, scheme valuation, exhaustive
// search over deterministic schemes, and a grid relaxation of the concave
// envelope that bounds every randomized scheme from above.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "zsig/error.hpp"
#include "zsig/game.hpp"
#include "zsig/lp.hpp"
#include "zsig/parallel.hpp"
#include "zsig/solve.hpp"

namespace zsig {

// kernel[s][k] = Pr[signal k | state s]; rows follow state_ids.
template <class T>
struct SignalingScheme {
  std::vector<std::string> state_ids;
  std::vector<std::string> signals;
  std::vector<std::vector<T>> kernel;

  void validate() const {
    if (kernel.size() != state_ids.size()) throw InvalidInput("scheme kernel has wrong number of rows");
    if (signals.empty()) throw InvalidInput("scheme has no signals");
    for (std::size_t s = 0; s < kernel.size(); ++s) {
      if (kernel[s].size() != signals.size()) throw InvalidInput("scheme row '" + state_ids[s] + "' has wrong width");
      validate_distribution(kernel[s], "scheme row '" + state_ids[s] + "'");
    }
  }

  std::optional<std::size_t> find_signal(const std::string& id) const {
    for (std::size_t k = 0; k < signals.size(); ++k)
      if (signals[k] == id) return k;
    return std::nullopt;
  }

  // Signals with positive probability under `prior`.
  std::vector<bool> support(const std::vector<T>& prior) const {
    std::vector<bool> used(signals.size(), false);
    for (std::size_t s = 0; s < kernel.size(); ++s) {
      if (prior[s] == T(0)) continue;
      for (std::size_t k = 0; k < signals.size(); ++k)
        if (kernel[s][k] != T(0)) used[k] = true;
    }
    return used;
  }

  static SignalingScheme deterministic(std::vector<std::string> state_ids, const std::vector<std::size_t>& label,
                                       std::vector<std::string> signals) {
    SignalingScheme scheme{std::move(state_ids), std::move(signals), {}};
    scheme.kernel.assign(scheme.state_ids.size(), std::vector<T>(scheme.signals.size(), T(0)));
    for (std::size_t s = 0; s < label.size(); ++s) scheme.kernel[s].at(label[s]) = T(1);
    return scheme;
  }
};

template <class T>
std::vector<std::string> state_ids_of(const BayesianGame<T>& game) {
  std::vector<std::string> ids;
  for (const auto& s : game.states()) ids.push_back(s.id);
  return ids;
}

template <class T>
SignalingScheme<T> full_revelation(const BayesianGame<T>& game) {
  std::vector<std::size_t> label(game.num_states());
  std::vector<std::string> signals;
  for (std::size_t s = 0; s < label.size(); ++s) {
    label[s] = s;
    signals.push_back("reveal:" + game.state(s).id);
  }
  return SignalingScheme<T>::deterministic(state_ids_of(game), label, signals);
}

template <class T>
SignalingScheme<T> no_revelation(const BayesianGame<T>& game) {
  return SignalingScheme<T>::deterministic(state_ids_of(game), std::vector<std::size_t>(game.num_states(), 0),
                                           {"constant"});
}

template <class T>
struct SignalPosterior {
  std::size_t signal = 0;
  std::string signal_id;
  T probability{};
  std::vector<T> posterior;
};

template <class T>
using PosteriorDecomposition = std::vector<SignalPosterior<T>>;

namespace detail {

// For each game state, the scheme row that describes it.
template <class T>
std::vector<std::size_t> align_scheme(const BayesianGame<T>& game, const SignalingScheme<T>& scheme) {
  scheme.validate();
  std::vector<std::size_t> row(game.num_states());
  bool same_order = scheme.state_ids.size() == game.num_states();
  for (std::size_t s = 0; same_order && s < game.num_states(); ++s)
    same_order = scheme.state_ids[s] == game.state(s).id;
  if (same_order) {
    for (std::size_t s = 0; s < row.size(); ++s) row[s] = s;
    return row;
  }
  std::map<std::string, std::size_t> index;
  for (std::size_t s = 0; s < scheme.state_ids.size(); ++s) index[scheme.state_ids[s]] = s;
  for (std::size_t s = 0; s < game.num_states(); ++s) {
    auto it = index.find(game.state(s).id);
    if (it == index.end()) throw InvalidInput("scheme does not cover state '" + game.state(s).id + "'");
    row[s] = it->second;
  }
  return row;
}

}  // namespace detail

// Bayes posteriors per signal; zero-probability signals are dropped.
template <class T>
PosteriorDecomposition<T> decompose(const BayesianGame<T>& game, const SignalingScheme<T>& scheme) {
  const auto row = detail::align_scheme(game, scheme);
  PosteriorDecomposition<T> out;
  for (std::size_t k = 0; k < scheme.signals.size(); ++k) {
    std::vector<T> joint(game.num_states());
    T mass(0);
    for (std::size_t s = 0; s < game.num_states(); ++s) {
      joint[s] = game.prior()[s] * scheme.kernel[row[s]][k];
      mass += joint[s];
    }
    if (mass == T(0)) continue;
    for (auto& v : joint) v /= mass;
    out.push_back({k, scheme.signals[k], mass, std::move(joint)});
  }
  return out;
}

template <class T>
T posterior_value(const BayesianGame<T>& game, const std::vector<T>& posterior,
                  std::size_t cell_budget = kDefaultCellBudget) {
  return solve_value(expected_matrix(game, posterior, cell_budget)).value;
}

template <class T>
T scheme_value(const BayesianGame<T>& game, const SignalingScheme<T>& scheme, std::size_t jobs = 1) {
  auto parts = decompose(game, scheme);
  std::vector<T> values(parts.size());
  parallel_for(parts.size(), jobs, [&](std::size_t i) { values[i] = posterior_value(game, parts[i].posterior); });
  T total(0);
  for (std::size_t i = 0; i < parts.size(); ++i) total += parts[i].probability * values[i];
  return total;
}

template <class T>
struct DeterministicOptimum {
  SignalingScheme<T> scheme;
  T value{};
  // Restricted growth string: block label of each state.
  std::vector<std::size_t> partition;
};

inline constexpr std::size_t kDefaultDeterministicCap = 10;

// Next restricted growth string in lexicographic order; false after the last.
inline bool next_restricted_growth(std::vector<std::size_t>& label, std::vector<std::size_t>& prefix_max) {
  const std::size_t n = label.size();
  for (std::size_t i = n; i-- > 1;) {
    if (label[i] <= prefix_max[i - 1]) {
      ++label[i];
      prefix_max[i] = std::max(prefix_max[i - 1], label[i]);
      for (std::size_t j = i + 1; j < n; ++j) {
        label[j] = 0;
        prefix_max[j] = prefix_max[j - 1];
      }
      return true;
    }
  }
  return false;
}

// Exhaustive maximum of scheme_value over all partitions of the states into
// signal classes.  Each class value is computed once per subset; partitions
// are visited in restricted-growth-string order and only a strict
// improvement replaces the incumbent, so the lexicographically least optimal
// partition wins.  In double mode "strict" means by more than 1e-12 relative.
template <class T>
DeterministicOptimum<T> optimal_deterministic(const BayesianGame<T>& game,
                                              std::size_t state_cap = kDefaultDeterministicCap,
                                              std::size_t jobs = 1) {
  const std::size_t m = game.num_states();
  if (m > state_cap) {
    throw SizeLimitExceeded("deterministic search over " + std::to_string(m) + " states exceeds cap " +
                            std::to_string(state_cap));
  }
  const std::size_t subsets = std::size_t{1} << m;
  std::vector<T> block_term(subsets, T(0));
  parallel_for(subsets - 1, jobs, [&](std::size_t idx) {
    const std::size_t mask = idx + 1;
    T mass(0);
    for (std::size_t s = 0; s < m; ++s)
      if (mask >> s & 1) mass += game.prior()[s];
    if (mass == T(0)) return;
    std::vector<T> post(m, T(0));
    for (std::size_t s = 0; s < m; ++s)
      if (mask >> s & 1) post[s] = game.prior()[s] / mass;
    block_term[mask] = mass * posterior_value(game, post);
  });

  std::vector<std::size_t> label(m, 0), prefix_max(m, 0), masks(m);
  std::vector<std::size_t> best_label;
  T best{};
  bool have = false;
  do {
    std::fill(masks.begin(), masks.end(), 0);
    for (std::size_t s = 0; s < m; ++s) masks[label[s]] |= std::size_t{1} << s;
    T value(0);
    for (std::size_t b = 0; b <= prefix_max[m - 1]; ++b) value += block_term[masks[b]];
    bool better = !have;
    if (have) {
      if constexpr (Numeric<T>::exact) {
        better = value > best;
      } else {
        better = value > best + 1e-12 * std::max(1.0, std::abs(best));
      }
    }
    if (better) {
      best = value;
      best_label = label;
      have = true;
    }
  } while (next_restricted_growth(label, prefix_max));

  const std::size_t blocks = *std::max_element(best_label.begin(), best_label.end()) + 1;
  std::vector<std::string> names;
  for (std::size_t b = 0; b < blocks; ++b) names.push_back("s" + std::to_string(b));
  return {SignalingScheme<T>::deterministic(state_ids_of(game), best_label, names), best, best_label};
}

template <class T>
struct ConcavificationBound {
  // Optimum of the grid LP: a feasible randomized scheme's value.
  T grid_value{};
  // Lipschitz slack covering posteriors that are not grid points.
  T slack{};
  // grid_value + slack; no scheme exceeds it.
  T upper_bound{};
  std::size_t resolution = 0;
  std::size_t grid_points = 0;
  // Grid posteriors used by the LP optimum, with their weights.
  std::vector<std::pair<T, std::vector<T>>> support;
};

inline constexpr std::size_t kDefaultGridResolution = 64;
inline constexpr std::size_t kConcavificationStateCap = 6;

namespace detail {

inline void enumerate_compositions(std::size_t parts, std::size_t total, std::vector<std::size_t>& current,
                                   std::vector<std::vector<std::size_t>>& out) {
  if (current.size() + 1 == parts) {
    current.push_back(total);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (std::size_t v = total + 1; v-- > 0;) {
    current.push_back(v);
    enumerate_compositions(parts, total - v, current, out);
    current.pop_back();
  }
}

}  // namespace detail

// Grid relaxation of the concave envelope at the prior.  Game values f(g) are
// computed at every point g of the simplex grid with spacing 1/resolution and
// the LP  max sum_g lambda_g f(g)  s.t.  sum_g lambda_g g = prior  picks the
// best decomposition over grid points.  Every posterior q lies in a cell of
// the Freudenthal triangulation whose vertices are within L1 distance
// 2(m-1)/resolution, and f is (spread/2)-Lipschitz in L1 for
// spread = max entry - min entry, so any scheme exceeds the grid optimum by at
// most spread*(m-1)/resolution.
template <class T>
ConcavificationBound<T> concavification_upper_bound(const BayesianGame<T>& game,
                                                    std::size_t resolution = kDefaultGridResolution,
                                                    std::size_t jobs = 1) {
  const std::size_t m = game.num_states();
  if (m > kConcavificationStateCap) {
    throw SizeLimitExceeded("concavification grid over " + std::to_string(m) + " states exceeds cap " +
                            std::to_string(kConcavificationStateCap));
  }
  if (resolution == 0) throw InvalidInput("grid resolution must be positive");

  T lowest{}, highest{};
  bool first = true;
  for (const auto& st : game.states()) {
    for (std::size_t r = 0; r < game.rows(); ++r)
      for (std::size_t c = 0; c < game.cols(); ++c) {
        T v = st.matrix(r, c);
        if (first || v < lowest) lowest = v;
        if (first || v > highest) highest = v;
        first = false;
      }
  }

  std::vector<std::vector<std::size_t>> grid;
  std::vector<std::size_t> scratch;
  detail::enumerate_compositions(m, resolution, scratch, grid);
  const T scale = T(static_cast<long>(resolution));

  std::vector<T> values(grid.size());
  parallel_for(grid.size(), jobs, [&](std::size_t g) {
    std::vector<T> post(m);
    for (std::size_t s = 0; s < m; ++s) post[s] = T(static_cast<long>(grid[g][s])) / scale;
    values[g] = posterior_value(game, post);
  });

  LinearProgram<T> lp;
  lp.num_vars = grid.size();
  lp.objective = values;
  for (std::size_t s = 0; s < m; ++s) {
    std::vector<T> coeffs(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) coeffs[g] = T(static_cast<long>(grid[g][s]));
    lp.add(std::move(coeffs), Relation::Equal, game.prior()[s] * scale);
  }
  auto res = solve_lp(lp);
  if (res.status != LpStatus::Optimal) throw InternalError("grid concavification LP failed");

  ConcavificationBound<T> out;
  out.grid_value = res.objective;
  out.slack = (highest - lowest) * T(static_cast<long>(m - 1)) / scale;
  out.upper_bound = out.grid_value + out.slack;
  out.resolution = resolution;
  out.grid_points = grid.size();
  for (std::size_t g = 0; g < grid.size(); ++g) {
    if (!is_positive(res.x[g])) continue;
    std::vector<T> post(m);
    for (std::size_t s = 0; s < m; ++s) post[s] = T(static_cast<long>(grid[g][s])) / scale;
    out.support.emplace_back(res.x[g], std::move(post));
  }
  return out;
}

template <class T>
struct HillClimbResult {
  SignalingScheme<T> scheme;
  T value{};
  std::size_t accepted_moves = 0;
};

// Local search over randomized schemes with `num_signals` signals, started
// from the better of full and no revelation.  Each move shifts a random
// fraction of one state's mass between two signals and is kept only on
// strict improvement; the result is a lower bound on the randomized optimum.
inline HillClimbResult<double> hill_climb(const BayesianGame<double>& game, std::size_t num_signals,
                                          std::size_t iterations, std::uint64_t seed) {
  const std::size_t m = game.num_states();
  if (num_signals == 0) throw InvalidInput("hill climb needs at least one signal");
  std::vector<std::string> names;
  for (std::size_t k = 0; k < num_signals; ++k) names.push_back("s" + std::to_string(k));

  std::vector<std::size_t> reveal(m), pool(m, 0);
  for (std::size_t s = 0; s < m; ++s) reveal[s] = s % num_signals;
  auto a = SignalingScheme<double>::deterministic(state_ids_of(game), reveal, names);
  auto b = SignalingScheme<double>::deterministic(state_ids_of(game), pool, names);
  double va = scheme_value(game, a), vb = scheme_value(game, b);
  HillClimbResult<double> best{va >= vb ? a : b, std::max(va, vb), 0};

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_state(0, m - 1), pick_signal(0, num_signals - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t it = 0; it < iterations && num_signals > 1; ++it) {
    auto candidate = best.scheme;
    const std::size_t s = pick_state(rng);
    const std::size_t from = pick_signal(rng), to = pick_signal(rng);
    if (from == to || candidate.kernel[s][from] == 0.0) continue;
    const double amount = candidate.kernel[s][from] * unit(rng);
    candidate.kernel[s][from] -= amount;
    candidate.kernel[s][to] += amount;
    const double v = scheme_value(game, candidate);
    if (v > best.value + 1e-12) {
      best.scheme = std::move(candidate);
      best.value = v;
      ++best.accepted_moves;
    }
  }
  return best;
}

}  // namespace zsig
