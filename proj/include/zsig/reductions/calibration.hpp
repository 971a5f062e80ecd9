#pragma once

// Exhaustive per-signal search over the posteriors a deterministic scheme can
// induce on a multiplicative instance, and the matched satisfiable /
// unsatisfiable triangle used to calibrate the lying construction.
//
// A deterministic signal s induces the uniform posterior on its preimage S.
// U_b depends on the state only through b⃗, and U_seek + U_ψ only through
// (i, u), so the expected matrix of S is fixed by its (i, u)-cell counts and
// the counts of b_v = 1 for each label v.  Flipping b_v maps to relabeling c
// for that v, so count B_v and |S| - B_v give the same value.  The sweep
// enumerates these fingerprints instead of the 2^|states| subsets and prunes
// with upper bounds from cached Bob strategies before solving any LP.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "zsig/csp.hpp"
#include "zsig/game.hpp"
#include "zsig/reductions/multiplicative.hpp"
#include "zsig/solve.hpp"

namespace zsig {

struct CalibrationPair {
  Csp2Instance satisfiable;
  Csp2Instance unsatisfiable;
};

// The triangle on 3 variables over {0, 1}: equality on every edge (satisfied
// by the constant assignments) against inequality on every edge (an odd cycle
// has no proper 2-coloring).
inline CalibrationPair calibration_pair() {
  const std::vector<bool> not_equal{false, true, true, false};
  std::vector<CspEdge> eq, ne;
  for (auto [u, v] : {std::pair<std::size_t, std::size_t>{0, 1}, {0, 2}, {1, 2}}) {
    eq.push_back({u, v, equality_relation(2)});
    ne.push_back({u, v, not_equal});
  }
  return {Csp2Instance(3, 2, 2, eq), Csp2Instance(3, 2, 2, ne)};
}

struct SubsetSweepResult {
  double max_value = 0.0;
  // Cell counts followed by the folded per-label bit counts, all divided by
  // their gcd, of a maximizing posterior.
  std::vector<std::size_t> argmax;
  std::size_t fingerprints = 0;
  std::size_t lps_solved = 0;
};

class SubsetSweep {
 public:
  explicit SubsetSweep(const MultiplicativeReduction<double>& red) : red_(red) {
    const std::size_t s = red.csp().alphabet();
    cells_ = red.csp().num_vars() * s;
    labels_ = s;
    if (labels_ > 4) throw SizeLimitExceeded("subset sweep supports alphabets of at most 4 labels");
    rows_ = red.num_alice();
    cols_ = red.num_bob();
    const std::size_t limit = std::size_t{1} << 22;
    if ((cells_ + (std::size_t{1} << labels_)) * rows_ * cols_ > limit * 8)
      throw SizeLimitExceeded("subset sweep basis matrices exceed the budget");
    // cell c = i * |Σ| + u; state index for (b, i, u) is the mixed radix code.
    for (std::size_t c = 0; c < cells_; ++c) cell_.push_back(basis(0, c, false));
    for (std::size_t b = 0; b < (std::size_t{1} << labels_); ++b) bits_.push_back(basis(b, 0, true));
  }

  SubsetSweepResult run() {
    SubsetSweepResult out;
    out.max_value = -1e300;
    const auto found = fingerprints();
    out.fingerprints = found.size();
    // Posteriors with a flat i-marginal come first so that the early LPs
    // set a high bar for pruning.
    std::vector<std::pair<double, std::vector<std::size_t>>> order;
    for (const auto& fp : found) order.emplace_back(peak_index_mass(fp), fp);
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [key, fp] : order) {
      const auto [pi, rho] = weights(fp);
      if (!cache_.empty() && upper_bound(pi, rho) <= out.max_value + 1e-12) continue;
      const auto m = expected(pi, rho);
      const auto sol = solve_value(m);
      ++out.lps_solved;
      remember(sol.bob);
      if (sol.value > out.max_value) {
        out.max_value = sol.value;
        out.argmax = fp;
      }
    }
    return out;
  }

  // Expected matrix for cell distribution pi and bit-vector distribution rho.
  ZeroSumMatrix<double> expected(const std::vector<double>& pi, const std::vector<double>& rho) const {
    std::vector<double> e(rows_ * cols_, 0.0);
    for (std::size_t c = 0; c < cells_; ++c)
      if (pi[c] != 0.0)
        for (std::size_t x = 0; x < e.size(); ++x) e[x] += pi[c] * cell_[c][x];
    for (std::size_t b = 0; b < rho.size(); ++b)
      if (rho[b] != 0.0)
        for (std::size_t x = 0; x < e.size(); ++x) e[x] += rho[b] * bits_[b][x];
    return ZeroSumMatrix<double>(rows_, cols_, std::move(e));
  }

  // Cell weights and a product distribution over b⃗ with the fingerprint's
  // per-label marginals.
  std::pair<std::vector<double>, std::vector<double>> weights(const std::vector<std::size_t>& fp) const {
    const double total = std::accumulate(fp.begin(), fp.begin() + cells_, 0.0);
    std::vector<double> pi(cells_);
    for (std::size_t c = 0; c < cells_; ++c) pi[c] = fp[c] / total;
    std::vector<double> rho(std::size_t{1} << labels_, 1.0);
    for (std::size_t b = 0; b < rho.size(); ++b)
      for (std::size_t v = 0; v < labels_; ++v) {
        const double q = fp[cells_ + v] / total;
        rho[b] *= (b >> v & 1) ? q : 1.0 - q;
      }
    return {pi, rho};
  }

  std::set<std::vector<std::size_t>> fingerprints() const {
    // Per cell, the distinct (count, bit counts per label) over subsets of
    // the 2^|Σ| bit vectors sharing that cell.
    const std::size_t vectors = std::size_t{1} << labels_;
    std::set<std::vector<std::size_t>> per_cell;
    for (std::size_t mask = 0; mask < (std::size_t{1} << vectors); ++mask) {
      std::vector<std::size_t> entry(1 + labels_, 0);
      for (std::size_t b = 0; b < vectors; ++b) {
        if (!(mask >> b & 1)) continue;
        ++entry[0];
        for (std::size_t v = 0; v < labels_; ++v) entry[1 + v] += b >> v & 1;
      }
      per_cell.insert(entry);
    }
    const std::vector<std::vector<std::size_t>> options(per_cell.begin(), per_cell.end());
    std::set<std::vector<std::size_t>> out;
    std::vector<std::size_t> counts(cells_, 0), ones(labels_, 0);
    enumerate(options, 0, counts, ones, out);
    return out;
  }

 private:
  std::vector<double> basis(std::size_t b, std::size_t cell, bool bits_part) const {
    const std::size_t s = labels_;
    const std::size_t state = red_.encode_state({b, cell / s, cell % s});
    const auto st = red_.decode_state(state);
    std::vector<double> m(rows_ * cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
      const auto a = red_.decode_alice(r);
      for (std::size_t c = 0; c < cols_; ++c) {
        const auto p = red_.payoff_parts(st, a, red_.decode_bob(c));
        m[r * cols_ + c] = bits_part ? p.bits : p.guessing + p.consistency;
      }
    }
    return m;
  }

  double peak_index_mass(const std::vector<std::size_t>& fp) const {
    const double total = std::accumulate(fp.begin(), fp.begin() + cells_, 0.0);
    double peak = 0.0;
    for (std::size_t i = 0; i < cells_ / labels_; ++i) {
      double mass = 0.0;
      for (std::size_t u = 0; u < labels_; ++u) mass += fp[i * labels_ + u];
      peak = std::max(peak, mass / total);
    }
    return peak;
  }

  void enumerate(const std::vector<std::vector<std::size_t>>& options, std::size_t cell,
                 std::vector<std::size_t>& counts, std::vector<std::size_t>& ones,
                 std::set<std::vector<std::size_t>>& out) const {
    if (cell == cells_) {
      const std::size_t total = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
      if (total == 0) return;
      std::vector<std::size_t> fp(counts);
      for (std::size_t v = 0; v < labels_; ++v) fp.push_back(std::min(ones[v], total - ones[v]));
      std::size_t g = total;
      for (std::size_t x : fp) g = std::gcd(g, x);
      for (auto& x : fp) x /= g;
      out.insert(std::move(fp));
      return;
    }
    for (const auto& o : options) {
      counts[cell] = o[0];
      for (std::size_t v = 0; v < labels_; ++v) ones[v] += o[1 + v];
      enumerate(options, cell + 1, counts, ones, out);
      for (std::size_t v = 0; v < labels_; ++v) ones[v] -= o[1 + v];
    }
    counts[cell] = 0;
  }

  void remember(const MixedStrategy<double>& y) {
    Cached entry;
    for (const auto& m : cell_) entry.cell.push_back(product(m, y));
    for (const auto& m : bits_) entry.bits.push_back(product(m, y));
    cache_.push_back(std::move(entry));
  }

  std::vector<double> product(const std::vector<double>& m, const MixedStrategy<double>& y) const {
    std::vector<double> out(rows_, 0.0);
    for (std::size_t c = 0; c < cols_; ++c) {
      if (y[c] == 0.0) continue;
      for (std::size_t r = 0; r < rows_; ++r) out[r] += m[r * cols_ + c] * y[c];
    }
    return out;
  }

  double upper_bound(const std::vector<double>& pi, const std::vector<double>& rho) const {
    double best = 1e300;
    std::vector<double> row(rows_);
    for (const auto& entry : cache_) {
      std::fill(row.begin(), row.end(), 0.0);
      for (std::size_t c = 0; c < cells_; ++c)
        if (pi[c] != 0.0)
          for (std::size_t r = 0; r < rows_; ++r) row[r] += pi[c] * entry.cell[c][r];
      for (std::size_t b = 0; b < rho.size(); ++b)
        if (rho[b] != 0.0)
          for (std::size_t r = 0; r < rows_; ++r) row[r] += rho[b] * entry.bits[b][r];
      best = std::min(best, *std::max_element(row.begin(), row.end()));
    }
    return best;
  }

  struct Cached {
    std::vector<std::vector<double>> cell;
    std::vector<std::vector<double>> bits;
  };

  const MultiplicativeReduction<double>& red_;
  std::size_t cells_ = 0;
  std::size_t labels_ = 0;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::vector<double>> cell_;
  std::vector<std::vector<double>> bits_;
  std::vector<Cached> cache_;
};

inline SubsetSweepResult subset_sweep(const MultiplicativeReduction<double>& red) { return SubsetSweep(red).run(); }

struct Calibration {
  double delta = 0.0;
  double satisfiable_value = 0.0;
  SubsetSweepResult unsatisfiable;
  // unsatisfiable max / satisfiable completeness value.
  double ratio() const { return unsatisfiable.max_value / satisfiable_value; }
};

// Runs the sweep on the calibration pair once per δ.
inline const Calibration& calibrate(double delta) {
  static std::mutex lock;
  static std::map<double, Calibration> cache;
  std::lock_guard<std::mutex> guard(lock);
  auto it = cache.find(delta);
  if (it != cache.end()) return it->second;
  const auto pair = calibration_pair();
  ReductionParams<double> params;
  params.delta = delta;
  const auto unsat = MultiplicativeReduction<double>::create(pair.unsatisfiable, params);
  const auto sat = MultiplicativeReduction<double>::create(pair.satisfiable, params);
  Calibration cal{delta, sat->completeness_value(), subset_sweep(*unsat)};
  return cache.emplace(delta, std::move(cal)).first->second;
}

}  // namespace zsig
