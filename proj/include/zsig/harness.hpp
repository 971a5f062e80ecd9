#pragma once

// End-to-end verification of the reductions: completeness guarantees,
// sampled and exhaustive soundness gaps, and the lying construction's
// structural claims.  Every check produces a VerificationReport whose JSON
// form is deterministic given the instance and the seed.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "zsig/dishonest.hpp"
#include "zsig/io.hpp"
#include "zsig/parallel.hpp"
#include "zsig/reductions/calibration.hpp"
#include "zsig/signaling.hpp"
#include "zsig/solve.hpp"

namespace zsig {

struct Verdict {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerificationReport {
  std::string check;
  Json metadata = Json::object();
  Json records = Json::array();
  Json aggregate = Json::object();
  std::string tolerance = "0";
  std::optional<std::uint64_t> seed;
  std::vector<Verdict> verdicts;

  bool passed() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
  }

  void add(std::string name, bool pass, std::string detail) {
    verdicts.push_back({std::move(name), pass, std::move(detail)});
  }

  Json to_json() const {
    Json j;
    j["check"] = check;
    j["instance"] = metadata;
    j["tolerance"] = tolerance;
    j["seed"] = seed ? Json(*seed) : Json();
    j["aggregate"] = aggregate;
    j["records"] = records;
    Json v = Json::array();
    for (const auto& x : verdicts) v.push_back({{"name", x.name}, {"pass", x.pass}, {"detail", x.detail}});
    j["verdicts"] = std::move(v);
    j["passed"] = passed();
    return j;
  }
};

// min over Bob's columns of Alice's payoff against `alice` on a posterior,
// reading only the rows Alice plays.
template <class T>
T strategy_guarantee(const BayesianGame<T>& game, const std::vector<T>& posterior, const MixedStrategy<T>& alice,
                     std::size_t* argmin = nullptr) {
  if (alice.size() != game.rows()) throw InvalidInput("strategy dimension differs from the game");
  std::vector<T> column(game.cols(), T(0));
  for (std::size_t s = 0; s < game.num_states(); ++s) {
    if (posterior[s] == T(0)) continue;
    const auto& m = game.state(s).matrix;
    for (std::size_t r = 0; r < alice.size(); ++r) {
      if (alice[r] == T(0)) continue;
      const T w = posterior[s] * alice[r];
      for (std::size_t c = 0; c < column.size(); ++c) column[c] += w * m(r, c);
    }
  }
  const auto best = std::min_element(column.begin(), column.end());
  if (argmin) *argmin = static_cast<std::size_t>(best - column.begin());
  return *best;
}

template <class T>
std::size_t support_size(const std::vector<T>& weights) {
  return static_cast<std::size_t>(std::count_if(weights.begin(), weights.end(), [](const T& w) { return w != T(0); }));
}

// ------------------------------------------------------------ completeness --

template <class T>
VerificationReport verify_completeness(const Instance<T>& inst, const Assignment& alpha, const T& tolerance,
                                       std::size_t jobs = 1) {
  CompletenessWitness<T> witness;
  T target{};
  switch (inst.construction) {
    case Construction::Additive:
      witness = additive_completeness_scheme(*inst.additive, alpha);
      target = inst.additive->completeness_value();
      break;
    case Construction::Multiplicative:
      witness = multiplicative_completeness_scheme(*inst.multiplicative, alpha);
      target = inst.multiplicative->completeness_value();
      break;
    case Construction::Lying:
      throw InvalidInput("verify-completeness expects an additive or mult instance; use verify-lying");
  }
  const auto parts = decompose(inst.game, witness.scheme);
  std::vector<T> guarantees(parts.size());
  std::vector<std::size_t> responses(parts.size());
  parallel_for(parts.size(), jobs, [&](std::size_t k) {
    guarantees[k] = strategy_guarantee(inst.game, parts[k].posterior, witness.alice[parts[k].signal], &responses[k]);
  });

  VerificationReport rep;
  rep.check = "completeness";
  rep.metadata = inst.metadata();
  rep.tolerance = format_scalar(tolerance);
  T total(0);
  T worst = guarantees.empty() ? target : guarantees.front();
  std::size_t failures = 0;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const bool ok = guarantees[k] >= target - tolerance;
    failures += !ok;
    total += parts[k].probability * guarantees[k];
    worst = std::min(worst, guarantees[k]);
    Json r;
    r["signal"] = parts[k].signal_id;
    r["probability"] = format_scalar(parts[k].probability);
    r["posterior_support"] = support_size(parts[k].posterior);
    r["alice_guarantee"] = format_scalar(guarantees[k]);
    r["bob_best_response"] = responses[k];
    r["pass"] = ok;
    rep.records.push_back(std::move(r));
  }
  rep.aggregate["target_value"] = format_scalar(target);
  rep.aggregate["min_guarantee"] = format_scalar(worst);
  rep.aggregate["scheme_lower_bound"] = format_scalar(total);
  rep.aggregate["margin"] = format_scalar(T(worst - target));
  rep.add("per_signal_guarantee", failures == 0,
          std::to_string(parts.size() - failures) + "/" + std::to_string(parts.size()) +
              " signals reach the target value " + format_scalar(target));
  return rep;
}

// --------------------------------------------------------------- soundness --

struct SoundnessOptions {
  std::size_t samples = 100;
  std::uint64_t seed = 1;
  double tolerance = 1e-8;
  // Also run the exhaustive per-signal subset sweep (multiplicative only).
  bool exhaustive = false;
  // Value the instance must stay strictly below; the construction's own
  // completeness value when unset.
  std::optional<double> reference;
  std::size_t jobs = 1;
};

namespace detail {

inline std::vector<double> dirichlet(std::size_t n, std::mt19937_64& rng) {
  std::gamma_distribution<double> gamma(1.0, 1.0);
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& x : w) total += (x = gamma(rng));
  for (auto& x : w) x /= total;
  return w;
}

inline std::vector<double> uniform_on(const std::vector<std::size_t>& label, std::size_t which) {
  std::vector<double> w(label.size(), 0.0);
  const double count = static_cast<double>(std::count(label.begin(), label.end(), which));
  for (std::size_t s = 0; s < label.size(); ++s)
    if (label[s] == which) w[s] = 1.0 / count;
  return w;
}

struct SampledPosterior {
  std::vector<double> weights;
  double probability = 1.0;
};

}  // namespace detail

// Samples follow the plan 50% Dirichlet, 25% point mass, 25% grouped by the
// v-component of a random assignment.  For the multiplicative construction a
// sample is one posterior (per-signal form).  For the additive construction a
// sample is a whole deterministic scheme and the gap is checked on its value
// (aggregate form): Dirichlet samples randomly label states into up to 8
// signals, point samples reveal one state and pool the rest.
inline VerificationReport verify_soundness_sampled(const Instance<double>& inst, const SoundnessOptions& opt) {
  if (inst.construction == Construction::Lying)
    throw InvalidInput("verify-soundness expects an additive or mult instance; use verify-lying");
  const bool additive = inst.construction == Construction::Additive;
  const std::size_t states = inst.game.num_states();
  const std::size_t n = additive ? inst.additive->csp().num_vars() : inst.multiplicative->csp().num_vars();
  const std::size_t alphabet = additive ? inst.additive->csp().alphabet() : inst.multiplicative->csp().alphabet();
  const double reference = opt.reference.value_or(additive ? inst.additive->completeness_value()
                                                           : inst.multiplicative->completeness_value());

  struct Sample {
    std::string kind;
    std::vector<detail::SampledPosterior> posteriors;
    std::vector<double> maxmin, certificate;
    double value = 0.0;
  };
  std::vector<Sample> samples(opt.samples);
  parallel_for(opt.samples, opt.jobs, [&](std::size_t idx) {
    std::mt19937_64 rng(opt.seed * 0x9E3779B97F4A7C15ULL + idx);
    Sample& smp = samples[idx];
    const std::size_t kind = idx % 4;
    std::vector<std::size_t> label(states, 0);
    if (kind <= 1) {
      smp.kind = "dirichlet";
      if (!additive) {
        smp.posteriors.push_back({detail::dirichlet(states, rng), 1.0});
      } else {
        for (auto& l : label) l = rng() % 8;
      }
    } else if (kind == 2) {
      smp.kind = "point";
      const std::size_t s = rng() % states;
      if (!additive) {
        std::vector<double> w(states, 0.0);
        w[s] = 1.0;
        smp.posteriors.push_back({w, 1.0});
      } else {
        for (auto& l : label) l = 1;
        label[s] = 0;
      }
    } else {
      smp.kind = "grouped";
      Assignment alpha(n);
      for (auto& a : alpha) a = rng() % alphabet;
      const auto labels = additive ? additive_signal_labels(*inst.additive, alpha)
                                   : multiplicative_signal_labels(*inst.multiplicative, alpha);
      label = labels.label;
      if (!additive) smp.posteriors.push_back({detail::uniform_on(label, label[rng() % states]), 1.0});
    }
    if (additive) {
      const std::size_t groups = *std::max_element(label.begin(), label.end()) + 1;
      for (std::size_t g = 0; g < groups; ++g) {
        const auto count = std::count(label.begin(), label.end(), g);
        if (count == 0) continue;
        smp.posteriors.push_back({detail::uniform_on(label, g), double(count) / double(states)});
      }
    }
    for (const auto& post : smp.posteriors) {
      const auto m = expected_matrix(inst.game, post.weights, inst.params.cell_budget);
      const auto sol = solve_value(m);
      const auto mimic = additive ? mimic_response_additive(*inst.additive, sol.alice)
                                  : mimic_response_multiplicative(*inst.multiplicative, sol.alice, post.weights);
      smp.maxmin.push_back(sol.value);
      smp.certificate.push_back(alice_best_response_value(m, mimic));
      smp.value += post.probability * sol.value;
    }
  });

  VerificationReport rep;
  rep.check = additive ? "soundness-aggregate" : "soundness-per-signal";
  rep.metadata = inst.metadata();
  rep.seed = opt.seed;
  rep.tolerance = format_scalar(opt.tolerance);
  double best = -1e300;
  std::size_t certificate_failures = 0;
  for (std::size_t idx = 0; idx < samples.size(); ++idx) {
    const auto& smp = samples[idx];
    Json r;
    r["sample"] = idx;
    r["kind"] = smp.kind;
    Json sigs = Json::array();
    for (std::size_t k = 0; k < smp.posteriors.size(); ++k) {
      const bool ok = smp.certificate[k] >= smp.maxmin[k] - opt.tolerance;
      certificate_failures += !ok;
      sigs.push_back({{"probability", format_scalar(smp.posteriors[k].probability)},
                      {"posterior_support", support_size(smp.posteriors[k].weights)},
                      {"maxmin", format_scalar(smp.maxmin[k])},
                      {"mimic_certificate", format_scalar(smp.certificate[k])}});
    }
    r["posteriors"] = std::move(sigs);
    r["value"] = format_scalar(smp.value);
    best = std::max(best, smp.value);
    rep.records.push_back(std::move(r));
  }
  rep.aggregate["reference"] = format_scalar(reference);
  rep.aggregate["max_sampled_value"] = format_scalar(best);
  rep.aggregate["sampled_margin"] = format_scalar(reference - best);
  rep.add("mimic_certificate_bounds_maxmin", certificate_failures == 0,
          std::to_string(certificate_failures) + " posteriors where the mimic certificate fell below the maxmin");
  rep.add("sampled_gap", best < reference,
          "max sampled value " + format_scalar(best) + " vs reference " + format_scalar(reference));
  if (opt.exhaustive) {
    if (additive) throw InvalidInput("the exhaustive sweep covers the mult construction only");
    const auto sweep = subset_sweep(*inst.multiplicative);
    rep.aggregate["exhaustive_max"] = format_scalar(sweep.max_value);
    rep.aggregate["exhaustive_margin"] = format_scalar(reference - sweep.max_value);
    rep.aggregate["fingerprints"] = sweep.fingerprints;
    rep.aggregate["lps_solved"] = sweep.lps_solved;
    Json fp = Json::array();
    for (auto x : sweep.argmax) fp.push_back(x);
    rep.aggregate["argmax_fingerprint"] = std::move(fp);
    rep.add("exhaustive_gap", sweep.max_value < reference,
            "max over all state subsets " + format_scalar(sweep.max_value) + " vs reference " +
                format_scalar(reference));
  }
  return rep;
}

// ------------------------------------------------------------------- lying --

enum class LyingExpectation { None, Completeness, Soundness, Honest };

inline LyingExpectation parse_lying_expectation(const std::string& name) {
  if (name == "none") return LyingExpectation::None;
  if (name == "completeness") return LyingExpectation::Completeness;
  if (name == "soundness") return LyingExpectation::Soundness;
  if (name == "honest") return LyingExpectation::Honest;
  throw InvalidInput("unknown expectation '" + name + "' (expected none, completeness, soundness or honest)");
}

template <class T>
struct ExtraColumnRange {
  T value{};
  // Smallest and largest weight on Bob's extra column over his optimal face.
  T min_weight{};
  T max_weight{};
  T block_mass{};
  // Payoff gap under Alice's optimal strategy between the best column on the
  // other side of the extra/honest split and the value; positive gaps settle
  // the weights without the face LPs.
  T gap{};
  // Solver value minus the certifying strategy's guarantee.
  T slack{};
  // Which side the certificate found optimal for Bob, if any.
  enum class Side { Unsettled, Extra, Honest } side = Side::Unsettled;

  // Every optimal Bob strategy is the extra column: by weight, or by a
  // certificate whose gap beats the tolerance and whose slack stays within it.
  bool forces_extra(const T& tol) const {
    return min_weight >= T(1) - tol || (side == Side::Extra && gap > tol && slack <= tol);
  }
  bool avoids_extra(const T& tol) const {
    return max_weight <= tol || (side == Side::Honest && gap > tol && slack <= tol);
  }
};

// If an optimal Alice x pays v' on the extra column and at least v' + g on
// every honest column, an optimal Bob y has
//   v >= x M y >= v' + g (1 - y_extra),
// so 1 - y_extra <= (v - v') / g.  The same bound with the roles swapped caps
// y_extra when the honest side is cheaper.  Two candidates for x are tried:
// the solver's strategy and the one maximizing the honest columns alone on
// the block part of the posterior, which separates the sides whenever the
// honest value there is below κ.  Face LPs run only when neither separates.
template <class T>
ExtraColumnRange<T> extra_column_range(const LyingReduction<T>& red, const BayesianGame<T>& game,
                                       const std::vector<T>& posterior) {
  const auto m = expected_matrix(game, posterior);
  const auto sol = solve_value(m);
  const std::size_t extra = red.extra_column();
  const std::size_t deg = red.degenerate_index();
  ExtraColumnRange<T> out;
  out.value = sol.value;
  out.block_mass = T(1) - posterior[deg];
  out.min_weight = T(0);
  out.max_weight = T(1);
  const T tol = Numeric<T>::tolerance();

  std::vector<MixedStrategy<T>> candidates{sol.alice};
  if (out.block_mass > T(0)) {
    std::vector<T> block = posterior;
    block[deg] = T(0);
    for (auto& w : block) w /= out.block_mass;
    const auto mb = expected_matrix(game, block);
    std::vector<T> entries;
    entries.reserve(mb.rows() * extra);
    for (std::size_t r = 0; r < mb.rows(); ++r)
      for (std::size_t c = 0; c < extra; ++c) entries.push_back(mb(r, c));
    candidates.push_back(solve_value(ZeroSumMatrix<T>(mb.rows(), extra, std::move(entries))).alice);
  }
  bool settled = false;
  for (const auto& x : candidates) {
    std::vector<T> column(m.cols(), T(0));
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (x[r] == T(0)) continue;
      for (std::size_t c = 0; c < m.cols(); ++c) column[c] += x[r] * m(r, c);
    }
    T honest_min = column[0];
    for (std::size_t c = 0; c < extra; ++c) honest_min = std::min(honest_min, column[c]);
    const T guaranteed = std::min(honest_min, column[extra]);
    const T slack = std::max(T(0), T(sol.value - guaranteed));
    if (honest_min - column[extra] > tol) {
      const T gap = honest_min - column[extra];
      const T low = T(1) - slack / gap;
      if (!settled || low > out.min_weight) {
        out.side = ExtraColumnRange<T>::Side::Extra;
        out.slack = slack;
        out.gap = gap;
        out.min_weight = low;
        out.max_weight = T(1);
      }
      settled = true;
    } else if (column[extra] - honest_min > tol) {
      const T gap = column[extra] - honest_min;
      const T high = slack / gap;
      if (!settled || high < out.max_weight) {
        out.side = ExtraColumnRange<T>::Side::Honest;
        out.slack = slack;
        out.gap = gap;
        out.min_weight = T(0);
        out.max_weight = high;
      }
      settled = true;
    }
  }
  if (!settled) {
    std::vector<T> objective(m.cols(), T(0));
    objective[extra] = T(1);
    out.min_weight = optimize_bob_face(m, sol.value, objective, false)[extra];
    out.max_weight = optimize_bob_face(m, sol.value, objective, true)[extra];
  }
  return out;
}

template <class T>
VerificationReport verify_lying(const Instance<T>& inst, const DishonestScheme<T>& ds, LyingExpectation expect,
                                const T& tolerance, std::size_t jobs = 1) {
  if (inst.construction != Construction::Lying) throw InvalidInput("verify-lying expects a lying instance");
  const auto& red = *inst.lying;
  VerificationReport rep;
  rep.check = "lying";
  rep.metadata = inst.metadata();
  rep.tolerance = format_scalar(tolerance);
  const T eps = red.epsilon();

  Json values = Json::object();
  T lowest{}, highest{};
  bool first = true;
  for (auto policy : kAllPolicies) {
    const auto eval = lying_value(inst.game, ds, policy, jobs);
    values[policy_name(policy)] = format_scalar(eval.value);
    if (first || eval.value < lowest) lowest = eval.value;
    if (first || eval.value > highest) highest = eval.value;
    first = false;
  }
  rep.aggregate["lying_value"] = std::move(values);

  const auto parts = decompose(inst.game, ds.alleged);
  std::vector<ExtraColumnRange<T>> ranges(parts.size());
  parallel_for(parts.size(), jobs,
               [&](std::size_t k) { ranges[k] = extra_column_range(red, inst.game, parts[k].posterior); });
  std::size_t avoid_failures = 0, last_failures = 0, honest_signals = 0;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const auto& r = ranges[k];
    const bool block_only = r.block_mass == T(1);
    honest_signals += block_only;
    if (block_only && !r.avoids_extra(tolerance)) ++avoid_failures;
    if (!r.forces_extra(tolerance)) ++last_failures;
    rep.records.push_back({{"signal", parts[k].signal_id},
                           {"alleged_probability", format_scalar(parts[k].probability)},
                           {"posterior_support", support_size(parts[k].posterior)},
                           {"block_mass", format_scalar(r.block_mass)},
                           {"alleged_value", format_scalar(r.value)},
                           {"extra_column_min_weight", format_scalar(r.min_weight)},
                           {"extra_column_max_weight", format_scalar(r.max_weight)},
                           {"certificate_gap", format_scalar(r.gap)},
                           {"certificate_slack", format_scalar(r.slack)}});
  }
  rep.aggregate["epsilon"] = format_scalar(eps);
  rep.aggregate["kappa"] = format_scalar(red.kappa());
  rep.aggregate["min_over_policies"] = format_scalar(lowest);
  rep.aggregate["max_over_policies"] = format_scalar(highest);
  switch (expect) {
    case LyingExpectation::None:
      break;
    case LyingExpectation::Completeness:
      rep.add("bob_avoids_extra_column", avoid_failures == 0,
              std::to_string(honest_signals - avoid_failures) + "/" + std::to_string(honest_signals) +
                  " honest-support signals exclude the extra column from every optimal Bob strategy");
      rep.add("value_at_least_one_minus_epsilon", lowest >= T(1) - eps - tolerance,
              "min over policies " + format_scalar(lowest) + " vs 1 - epsilon = " + format_scalar(T(T(1) - eps)));
      break;
    case LyingExpectation::Soundness:
      rep.add("bob_plays_extra_column", last_failures == 0,
              std::to_string(parts.size() - last_failures) + "/" + std::to_string(parts.size()) +
                  " signals force the extra column in every optimal Bob strategy");
      rep.add("value_at_most_epsilon", highest <= eps + tolerance,
              "max over policies " + format_scalar(highest) + " vs epsilon = " + format_scalar(eps));
      break;
    case LyingExpectation::Honest:
      rep.add("honest_value_below_one_minus_epsilon", highest < T(1) - eps,
              "max over policies " + format_scalar(highest) + " vs 1 - epsilon = " + format_scalar(T(T(1) - eps)));
      break;
  }
  return rep;
}

// Honest pair: real = alleged.
template <class T>
DishonestScheme<T> honest_pair(const SignalingScheme<T>& scheme) {
  return {scheme, scheme};
}

struct LyingSweepResult {
  std::size_t schemes = 0;
  std::size_t signals = 0;
  double min_extra_weight = 1.0;
  // Smallest certificate gap of extra_column_range over all signals.
  double min_gap = 1e300;
  double max_alice_payoff = -1e300;
  // Largest honest per-signal value over all block-state subsets, against
  // κ.  Bob's extra column is his unique optimum whenever the honest value of
  // the block part is below κ.
  double honest_subset_max = 0.0;
};

// Alleged schemes that group block states by (i, u)-cell into at most 4
// signals, with the degenerate state either sent to its own signal or joined
// to one of them.  Real = alleged.  Checks that every optimal Bob strategy of
// every signal is the extra column, and records Alice's payoff.
inline LyingSweepResult lying_soundness_sweep(const Instance<double>& inst, std::size_t max_signals = 4,
                                              std::size_t jobs = 1) {
  if (inst.construction != Construction::Lying) throw InvalidInput("lying sweep expects a lying instance");
  const auto& red = *inst.lying;
  const auto& honest = red.honest();
  const std::size_t s = honest.csp().alphabet();
  const std::size_t cells = honest.csp().num_vars() * s;
  std::vector<std::vector<std::size_t>> partitions;
  std::vector<std::size_t> rgs(cells, 0);
  // Restricted growth strings of length `cells` with at most max_signals labels.
  std::function<void(std::size_t, std::size_t)> grow = [&](std::size_t pos, std::size_t used) {
    if (pos == cells) {
      partitions.push_back(rgs);
      return;
    }
    for (std::size_t l = 0; l <= std::min(used, max_signals - 1); ++l) {
      rgs[pos] = l;
      grow(pos + 1, std::max(used, l + 1));
    }
  };
  grow(0, 0);
  struct Case {
    std::vector<std::size_t> label;
  };
  std::vector<Case> cases;
  for (const auto& p : partitions) {
    const std::size_t groups = *std::max_element(p.begin(), p.end()) + 1;
    for (std::size_t deg = 0; deg <= groups; ++deg) {
      Case c;
      c.label.resize(red.num_states());
      for (std::size_t st = 0; st < red.num_block_states(); ++st) {
        const auto state = honest.decode_state(st);
        c.label[st] = p[state.i * s + state.u];
      }
      c.label[red.degenerate_index()] = deg;
      cases.push_back(std::move(c));
    }
  }
  LyingSweepResult out;
  out.schemes = cases.size();
  std::vector<double> min_weight(cases.size(), 1.0), payoff(cases.size(), 0.0), gap(cases.size(), 1e300);
  std::vector<std::size_t> signal_count(cases.size(), 0);
  const auto& prior = inst.game.prior();
  parallel_for(cases.size(), jobs, [&](std::size_t idx) {
    const auto& label = cases[idx].label;
    const std::size_t groups = *std::max_element(label.begin(), label.end()) + 1;
    for (std::size_t g = 0; g < groups; ++g) {
      std::vector<double> post(label.size(), 0.0);
      double mass = 0.0;
      for (std::size_t st = 0; st < label.size(); ++st)
        if (label[st] == g) mass += (post[st] = prior[st]);
      if (mass == 0.0) continue;
      for (auto& w : post) w /= mass;
      const auto r = extra_column_range(red, inst.game, post);
      ++signal_count[idx];
      min_weight[idx] = std::min(min_weight[idx], r.min_weight);
      gap[idx] = std::min(gap[idx], r.gap);
      payoff[idx] += mass * r.value;
    }
  });
  for (std::size_t idx = 0; idx < cases.size(); ++idx) {
    out.signals += signal_count[idx];
    out.min_extra_weight = std::min(out.min_extra_weight, min_weight[idx]);
    out.min_gap = std::min(out.min_gap, gap[idx]);
    out.max_alice_payoff = std::max(out.max_alice_payoff, payoff[idx]);
  }
  out.honest_subset_max = subset_sweep(honest).max_value;
  return out;
}

// Report form of lying_soundness_sweep with the soundness verdicts.
inline VerificationReport verify_lying_sweep(const Instance<double>& inst, double tolerance, std::size_t jobs = 1) {
  const auto sweep = lying_soundness_sweep(inst, 4, jobs);
  const auto& red = *inst.lying;
  VerificationReport rep;
  rep.check = "lying-sweep";
  rep.metadata = inst.metadata();
  rep.tolerance = format_scalar(tolerance);
  rep.aggregate["schemes"] = sweep.schemes;
  rep.aggregate["signals"] = sweep.signals;
  rep.aggregate["min_extra_column_weight"] = format_scalar(sweep.min_extra_weight);
  rep.aggregate["min_certificate_gap"] = format_scalar(sweep.min_gap);
  rep.aggregate["max_alice_payoff"] = format_scalar(sweep.max_alice_payoff);
  rep.aggregate["honest_subset_max"] = format_scalar(sweep.honest_subset_max);
  rep.aggregate["epsilon"] = format_scalar(red.epsilon());
  rep.aggregate["kappa"] = format_scalar(red.kappa());
  rep.add("bob_plays_extra_column", sweep.min_extra_weight >= 1.0 - tolerance,
          "min extra-column weight over every optimal Bob strategy " + format_scalar(sweep.min_extra_weight));
  rep.add("value_at_most_epsilon", sweep.max_alice_payoff <= red.epsilon() + tolerance,
          "max payoff " + format_scalar(sweep.max_alice_payoff) + " vs epsilon = " + format_scalar(red.epsilon()));
  rep.add("honest_subset_max_below_kappa", sweep.honest_subset_max < red.kappa(),
          "honest max " + format_scalar(sweep.honest_subset_max) + " vs kappa = " + format_scalar(red.kappa()));
  return rep;
}

}  // namespace zsig
