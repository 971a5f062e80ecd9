#pragma once

// Dense two-phase primal simplex, templated on the scalar type.
//
// Pivot rule: Dantzig (largest reduced cost, lowest column index on ties);
// in exact mode ratio-test ties go to the row whose basic variable has the
// lowest index, and floating mode uses the Harris two-pass ratio test.
// After kDegenerateSwitch consecutive degenerate pivots the entering rule
// falls back to Bland (lowest improving index) until progress resumes.
// Every choice is a pure function of the tableau, so identical inputs
// always produce identical bases and solutions.

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "zsig/error.hpp"
#include "zsig/scalar.hpp"

namespace zsig {

enum class Relation { LessEqual, Equal, GreaterEqual };

enum class LpStatus { Optimal, Infeasible, Unbounded };

template <class T>
struct LpConstraint {
  std::vector<T> coeffs;
  Relation relation = Relation::LessEqual;
  T rhs{};
};

// maximize objective . x  subject to constraints, x >= 0.
template <class T>
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<T> objective;
  std::vector<LpConstraint<T>> constraints;

  void add(std::vector<T> coeffs, Relation relation, T rhs) {
    if (coeffs.size() != num_vars) throw InvalidInput("constraint arity mismatch");
    constraints.push_back({std::move(coeffs), relation, std::move(rhs)});
  }
};

template <class T>
struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  T objective{};
  std::vector<T> x;
  std::size_t pivots = 0;
};

namespace detail {

inline constexpr std::size_t kDegenerateSwitch = 64;
inline constexpr std::size_t kMaxPivots = 2'000'000;
inline constexpr double kHarrisSlack = 1e-9;

// Row-major tableau with an explicit reduced-cost row.  rhs lives in the
// last column; cost_[width] holds -z.
template <class T>
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * (cols + 1)), cost_(cols + 1), basis_(rows) {}

  T& at(std::size_t r, std::size_t c) { return a_[r * (cols_ + 1) + c]; }
  const T& at(std::size_t r, std::size_t c) const { return a_[r * (cols_ + 1) + c]; }
  T& rhs(std::size_t r) { return at(r, cols_); }
  const T& rhs(std::size_t r) const { return at(r, cols_); }
  std::vector<T>& cost() { return cost_; }
  const std::vector<T>& cost() const { return cost_; }
  std::vector<std::size_t>& basis() { return basis_; }
  const std::vector<std::size_t>& basis() const { return basis_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const std::size_t width = cols_ + 1;
    T* prow = &a_[pr * width];
    const T inv = T(1) / prow[pc];
    for (std::size_t c = 0; c < width; ++c) prow[c] *= inv;
    prow[pc] = T(1);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == pr) continue;
      T* row = &a_[r * width];
      const T factor = row[pc];
      if (factor == T(0)) continue;
      for (std::size_t c = 0; c < width; ++c) {
        if (prow[c] != T(0)) row[c] -= factor * prow[c];
      }
      row[pc] = T(0);
    }
    const T factor = cost_[pc];
    if (factor != T(0)) {
      for (std::size_t c = 0; c < width; ++c) {
        if (prow[c] != T(0)) cost_[c] -= factor * prow[c];
      }
      cost_[pc] = T(0);
    }
    basis_[pr] = pc;
  }

  // Runs primal simplex on columns flagged in `allowed`.  Returns false when
  // the objective is unbounded.
  bool optimize(const std::vector<bool>& allowed, std::size_t& pivots) {
    std::size_t degenerate_run = 0;
    const T eps = Numeric<T>::eps();
    while (true) {
      if (pivots > kMaxPivots) throw InternalError("simplex pivot limit exceeded");
      const bool bland = degenerate_run >= kDegenerateSwitch;
      std::size_t enter = cols_;
      T best{};
      for (std::size_t c = 0; c < cols_; ++c) {
        if (!allowed[c] || !(cost_[c] > eps)) continue;
        if (bland) {
          enter = c;
          break;
        }
        if (enter == cols_ || cost_[c] > best) {
          enter = c;
          best = cost_[c];
        }
      }
      if (enter == cols_) return true;

      std::size_t leave = rows_;
      T best_ratio{};
      if constexpr (Numeric<T>::exact) {
        for (std::size_t r = 0; r < rows_; ++r) {
          const T& coef = at(r, enter);
          if (!(coef > eps)) continue;
          T ratio = rhs(r) / coef;
          if (leave == rows_ || ratio < best_ratio ||
              (ratio == best_ratio && basis_[r] < basis_[leave])) {
            leave = r;
            best_ratio = ratio;
          }
        }
      } else {
        // Harris two-pass test: bound the step with rhs relaxed by
        // kHarrisSlack, then take the largest pivot among rows whose ratio is
        // within that bound.  Tiny pivots otherwise blow up the tableau.
        T bound{};
        bool any = false;
        for (std::size_t r = 0; r < rows_; ++r) {
          const T& coef = at(r, enter);
          if (!(coef > eps)) continue;
          const T relaxed = (rhs(r) + kHarrisSlack) / coef;
          if (!any || relaxed < bound) bound = relaxed;
          any = true;
        }
        T best_coef{};
        for (std::size_t r = 0; any && r < rows_; ++r) {
          const T& coef = at(r, enter);
          if (!(coef > eps) || rhs(r) / coef > bound) continue;
          if (leave == rows_ || coef > best_coef || (coef == best_coef && basis_[r] < basis_[leave])) {
            leave = r;
            best_coef = coef;
          }
        }
        if (leave != rows_) best_ratio = std::max(T(0), rhs(leave) / at(leave, enter));
      }
      if (leave == rows_) return false;
      if (is_zero(best_ratio)) {
        ++degenerate_run;
      } else {
        degenerate_run = 0;
      }
      pivot(leave, enter);
      ++pivots;
      // Clamp round-off so the basis stays primal feasible.
      if constexpr (!Numeric<T>::exact) {
        for (std::size_t r = 0; r < rows_; ++r) {
          if (rhs(r) < T(0) && rhs(r) > -(eps + kHarrisSlack)) rhs(r) = T(0);
        }
      }
    }
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<T> a_;
  std::vector<T> cost_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

template <class T>
LpResult<T> solve_lp(const LinearProgram<T>& lp) {
  const std::size_t m = lp.constraints.size();
  const std::size_t n = lp.num_vars;
  if (lp.objective.size() != n) throw InvalidInput("objective arity mismatch");

  // Column layout: structural | slack/surplus (one per inequality) | artificial.
  std::vector<int> sign(m, 1);
  std::vector<Relation> rel(m);
  std::size_t num_slack = 0;
  std::size_t num_art = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& con = lp.constraints[i];
    if (con.coeffs.size() != n) throw InvalidInput("constraint arity mismatch");
    rel[i] = con.relation;
    if (con.rhs < T(0)) {
      sign[i] = -1;
      if (rel[i] == Relation::LessEqual) rel[i] = Relation::GreaterEqual;
      else if (rel[i] == Relation::GreaterEqual) rel[i] = Relation::LessEqual;
    }
    if (rel[i] != Relation::Equal) ++num_slack;
    if (rel[i] != Relation::LessEqual) ++num_art;
  }
  const std::size_t width = n + num_slack + num_art;
  detail::Tableau<T> tab(m, width);
  std::size_t slack_col = n;
  std::size_t art_col = n + num_slack;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& con = lp.constraints[i];
    for (std::size_t j = 0; j < n; ++j) {
      tab.at(i, j) = sign[i] > 0 ? con.coeffs[j] : T(-con.coeffs[j]);
    }
    tab.rhs(i) = sign[i] > 0 ? con.rhs : T(-con.rhs);
    if (rel[i] == Relation::LessEqual) {
      tab.at(i, slack_col) = T(1);
      tab.basis()[i] = slack_col++;
    } else {
      if (rel[i] == Relation::GreaterEqual) tab.at(i, slack_col++) = T(-1);
      tab.at(i, art_col) = T(1);
      tab.basis()[i] = art_col++;
    }
  }

  LpResult<T> result;
  std::vector<bool> allowed(width, true);
  const std::size_t first_art = n + num_slack;

  if (num_art > 0) {
    // Phase 1: maximize -sum(artificials).
    auto& cost = tab.cost();
    for (std::size_t i = 0; i < m; ++i) {
      if (tab.basis()[i] < first_art) continue;
      for (std::size_t c = 0; c < first_art; ++c) cost[c] += tab.at(i, c);
      cost[width] += tab.rhs(i);
    }
    const T initial = cost[width];
    tab.optimize(allowed, result.pivots);
    // cost[width] = -z = sum of remaining artificials.  In floating mode the
    // residual is judged relative to the starting infeasibility.
    T residual = tab.cost()[width];
    if constexpr (!Numeric<T>::exact) residual /= std::max(T(1), initial) * (Numeric<T>::tolerance() / Numeric<T>::eps());
    if (is_positive(residual)) {
      result.status = LpStatus::Infeasible;
      return result;
    }
    // Drive zero-level artificials out of the basis where possible.
    for (std::size_t i = 0; i < m; ++i) {
      if (tab.basis()[i] < first_art) continue;
      for (std::size_t c = 0; c < first_art; ++c) {
        if (!is_zero(tab.at(i, c))) {
          tab.pivot(i, c);
          ++result.pivots;
          break;
        }
      }
    }
    for (std::size_t c = first_art; c < width; ++c) allowed[c] = false;
  }

  // Phase 2 reduced costs from scratch.
  auto& cost = tab.cost();
  for (std::size_t c = 0; c <= width; ++c) cost[c] = T(0);
  for (std::size_t j = 0; j < n; ++j) cost[j] = lp.objective[j];
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t b = tab.basis()[i];
    if (b >= n) continue;
    const T cb = lp.objective[b];
    if (cb == T(0)) continue;
    for (std::size_t c = 0; c <= width; ++c) cost[c] -= cb * tab.at(i, c);
  }
  for (std::size_t i = 0; i < m; ++i) cost[tab.basis()[i]] = T(0);

  if (!tab.optimize(allowed, result.pivots)) {
    result.status = LpStatus::Unbounded;
    return result;
  }
  result.status = LpStatus::Optimal;
  result.objective = T(-cost[width]);
  result.x.assign(n, T(0));
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.basis()[i] < n) result.x[tab.basis()[i]] = tab.rhs(i);
  }
  return result;
}

}  // namespace zsig
