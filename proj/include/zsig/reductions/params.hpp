#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "zsig/error.hpp"
#include "zsig/scalar.hpp"

namespace zsig {

template <class T>
struct ReductionParams {
  T delta = from_ratio<T>(1, 10);
  // Block parameter of the additive construction; ceil(sqrt(n)) when unset.
  std::optional<std::size_t> k;
  // Soundness gap of the input CSP, if known.  Only used for warnings.
  std::optional<double> eta;
  // Value constants of the lying construction; see LyingReduction.
  std::optional<T> c1;
  std::optional<T> c2;
  // Probability of the block game in the lying construction; 2^-n when unset.
  std::optional<T> epsilon;
  // Largest dense matrix materialized for one posterior.
  std::size_t cell_budget = std::size_t{1} << 20;

  void validate() const {
    if (!(delta > T(0)) || !(delta < T(1))) throw InvalidInput("delta must lie in (0, 1)");
    if (k && *k == 0) throw InvalidInput("k must be positive");
    if (epsilon && (!(*epsilon > T(0)) || !(*epsilon < T(1)))) throw InvalidInput("epsilon must lie in (0, 1)");
    if (c1 && !(*c1 > T(0))) throw InvalidInput("c1 must be positive");
    if (c2 && !(*c2 > T(0))) throw InvalidInput("c2 must be positive");
    if (c1 && c2 && !(*c1 > *c2)) throw InvalidInput("c1 must exceed c2");
  }

  // Advisory notes on parameter choices the constructions are not meant for.
  std::vector<std::string> warnings() const {
    std::vector<std::string> out;
    if (eta) {
      if (*eta <= 0.0 || *eta > 1.0) out.push_back("eta outside (0, 1]");
      else if (to_double(delta) >= 0.5 * std::sqrt(*eta))
        out.push_back("delta is not small compared with sqrt(eta); the soundness gap may vanish");
    }
    return out;
  }
};

}  // namespace zsig
