#pragma once

// The block construction: nature draws (b̂, i, u), both players choose
// (v, c, j, T, w) and Alice receives U_b + U_Althofer + U_ψ with
// U_ψ = δ τ^{A,Z} - δ² τ^{B,Z} + δ³ τ^{A,B}.
//
// Index layout.  States are mixed radix (b̂, i, u) with b̂ packed as an
// integer whose bit s * 2k + l is entry (s, l), and u packed base |Σ| with
// entry 0 most significant.  Strategies are mixed radix (v, c, j, T, w) with
// v and w packed the same way and T its lexicographic combination rank.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "zsig/codec.hpp"
#include "zsig/csp.hpp"
#include "zsig/game.hpp"
#include "zsig/gadgets.hpp"
#include "zsig/reductions/params.hpp"
#include "zsig/signaling.hpp"

namespace zsig {

struct AdditiveState {
  std::uint64_t b_hat = 0;
  std::size_t i = 0;
  std::vector<std::size_t> u;
};

struct AdditiveStrategy {
  std::vector<std::size_t> v;
  std::size_t c = 0;
  std::size_t j = 0;
  std::vector<std::size_t> subset;
  std::vector<std::size_t> w;
  // Membership bitmask of `subset`.
  std::uint64_t subset_mask = 0;
};

template <class T>
struct PayoffParts {
  T bits{};
  T guessing{};
  T consistency{};
  T total() const { return bits + guessing + consistency; }
};

inline constexpr std::size_t kMaxEnumerated = std::size_t{1} << 22;

template <class T>
class AdditiveReduction {
 public:
  AdditiveReduction(const AdditiveReduction&) = delete;
  AdditiveReduction& operator=(const AdditiveReduction&) = delete;

  static std::shared_ptr<const AdditiveReduction> create(Csp2Instance csp, ReductionParams<T> params) {
    return std::shared_ptr<const AdditiveReduction>(new AdditiveReduction(std::move(csp), std::move(params)));
  }

  const Csp2Instance& csp() const { return csp_; }
  const ReductionParams<T>& params() const { return params_; }
  const Partition& partition() const { return partition_; }
  std::size_t k() const { return partition_.k; }
  std::size_t num_blocks() const { return partition_.blocks.size(); }
  std::size_t block_length() const { return length_; }
  std::size_t subset_size() const { return subset_size_; }
  std::size_t num_states() const { return states_.size(); }
  std::size_t num_strategies() const { return strategies_.size(); }
  std::size_t num_shifts() const { return shifts_; }

  AdditiveState decode_state(std::size_t index) const {
    auto d = states_.decode(index);
    return {static_cast<std::uint64_t>(d[0]), d[1], unpack_digits(d[2], csp_.alphabet(), length_)};
  }

  std::size_t encode_state(const AdditiveState& s) const {
    return states_.encode({static_cast<std::size_t>(s.b_hat), s.i, pack_digits(s.u, csp_.alphabet())});
  }

  AdditiveStrategy decode_strategy(std::size_t index) const {
    auto d = strategies_.decode(index);
    AdditiveStrategy s{unpack_digits(d[0], csp_.alphabet(), length_), d[1], d[2],
                       combination_unrank(d[3], num_blocks(), subset_size_),
                       unpack_digits(d[4], csp_.alphabet(), length_), 0};
    for (std::size_t x : s.subset) s.subset_mask |= std::uint64_t{1} << x;
    return s;
  }

  std::size_t encode_strategy(const AdditiveStrategy& s) const {
    return strategies_.encode({pack_digits(s.v, csp_.alphabet()), s.c, s.j, combination_rank(s.subset, num_blocks()),
                               pack_digits(s.w, csp_.alphabet())});
  }

  std::string state_id(std::size_t index) const {
    const auto s = decode_state(index);
    std::string bits;
    for (std::size_t x = 0; x < csp_.alphabet() * length_; ++x) bits += (s.b_hat >> x & 1) ? '1' : '0';
    return "b=" + bits + "/i=" + std::to_string(s.i) + "/u=" + digits_string(s.u);
  }

  std::uint8_t bit(const AdditiveState& s, const std::vector<std::size_t>& v) const {
    return pairwise_bit(AuxBits::from_integer(s.b_hat, csp_.alphabet(), length_), v);
  }

  PayoffParts<T> payoff_parts(const AdditiveState& s, const AdditiveStrategy& a, const AdditiveStrategy& b) const {
    const AuxBits table = AuxBits::from_integer(s.b_hat, csp_.alphabet(), length_);
    PayoffParts<T> p;
    p.bits = T(int(a.c == pairwise_bit(table, a.v)) - int(b.c == pairwise_bit(table, b.v)));
    p.guessing = T(int(a.subset_mask >> b.j & 1) - int(b.subset_mask >> a.j & 1));
    const auto tau = tau_additive(*checker_, csp_.alphabet(), a.v, b.v, a.j, a.w, b.j, b.w, s.i, s.u);
    p.consistency = consistency_[tau_code(tau)];
    return p;
  }

  T payoff(std::size_t state, std::size_t alice, std::size_t bob) const {
    return payoff_parts(cached_state(state), cached_strategy(alice), cached_strategy(bob)).total();
  }

  // Uniform prior over all states; every state matrix is a lazy oracle.
  BayesianGame<T> game(std::shared_ptr<const AdditiveReduction> self) const {
    if (self.get() != this) throw InvalidInput("game() needs the owning pointer");
    std::vector<GameState<T>> states;
    for (std::size_t s = 0; s < num_states(); ++s) {
      states.push_back({state_id(s), ZeroSumMatrix<T>::from_oracle(num_strategies(), num_strategies(),
                                                                   [self, s](std::size_t r, std::size_t c) {
                                                                     return self->payoff(s, r, c);
                                                                   })});
    }
    const T weight = from_ratio<T>(1, static_cast<std::int64_t>(num_states()));
    return BayesianGame<T>(std::move(states), std::vector<T>(num_states(), weight));
  }

  // δ - δ² + δ³.
  T completeness_value() const { return consistency_[7]; }

  static std::string digits_string(const std::vector<std::size_t>& v) {
    std::string out;
    for (std::size_t x = 0; x < v.size(); ++x) out += (x ? "." : "") + std::to_string(v[x]);
    return out;
  }

 private:
  AdditiveReduction(Csp2Instance csp, ReductionParams<T> params) : csp_(std::move(csp)), params_(std::move(params)) {
    params_.validate();
    const std::size_t n = csp_.num_vars();
    const std::size_t k = params_.k.value_or(default_block_parameter(n));
    if (k > n) throw InvalidInput("k exceeds the number of variables");
    partition_ = greedy_partition(csp_, k);
    const std::size_t m = partition_.blocks.size();
    if (m > 63) throw SizeLimitExceeded("additive construction supports at most 63 blocks, got " + std::to_string(m));
    length_ = 2 * k;
    subset_size_ = std::min(m, ceil_div(n, 2 * k));
    const std::size_t table_bits = csp_.alphabet() * length_;
    if (table_bits > 63) throw SizeLimitExceeded("bit table of " + std::to_string(table_bits) + " entries is too large");
    shifts_ = checked_product(std::vector<std::size_t>(length_, csp_.alphabet()), "assignment space");
    states_ = MixedRadix({std::size_t{1} << table_bits, m, shifts_}, "additive state space");
    strategies_ = MixedRadix({shifts_, 2, m, binomial(m, subset_size_), shifts_}, "additive strategy space");
    checker_ = std::make_unique<BlockChecker>(csp_, partition_);
    const T d = params_.delta;
    for (std::size_t code = 0; code < 8; ++code) {
      T value(0);
      if (code & 1) value += d;
      if (code & 2) value -= d * d;
      if (code & 4) value += d * d * d;
      consistency_[code] = value;
    }
    if (states_.size() <= kMaxEnumerated) {
      for (std::size_t s = 0; s < states_.size(); ++s) state_cache_.push_back(decode_state(s));
    }
    if (strategies_.size() <= kMaxEnumerated) {
      for (std::size_t s = 0; s < strategies_.size(); ++s) strategy_cache_.push_back(decode_strategy(s));
    }
  }

  static std::size_t tau_code(const TauBits& t) {
    return std::size_t(t.alice_nature) | std::size_t(t.bob_nature) << 1 | std::size_t(t.alice_bob) << 2;
  }

  AdditiveState cached_state(std::size_t s) const {
    return state_cache_.empty() ? decode_state(s) : state_cache_.at(s);
  }
  const AdditiveStrategy& cached_strategy(std::size_t s) const {
    if (strategy_cache_.empty()) {
      thread_local AdditiveStrategy scratch;
      scratch = decode_strategy(s);
      return scratch;
    }
    return strategy_cache_.at(s);
  }

  Csp2Instance csp_;
  ReductionParams<T> params_;
  Partition partition_;
  std::size_t length_ = 0;
  std::size_t subset_size_ = 0;
  std::size_t shifts_ = 0;
  MixedRadix states_;
  MixedRadix strategies_;
  std::unique_ptr<BlockChecker> checker_;
  std::array<T, 8> consistency_{};
  std::vector<AdditiveState> state_cache_;
  std::vector<AdditiveStrategy> strategy_cache_;
};

template <class T>
struct CompletenessWitness {
  SignalingScheme<T> scheme;
  // Alice's strategy for each signal of `scheme`, in signal order.
  std::vector<MixedStrategy<T>> alice;
};

inline void require_satisfying(const Csp2Instance& csp, const Assignment& alpha) {
  if (alpha.size() != csp.num_vars() || !is_satisfying(csp, alpha))
    throw InvalidInput("assignment does not satisfy the CSP");
}

struct SignalLabels {
  std::vector<std::string> signals;
  // Signal index of every state.
  std::vector<std::size_t> label;
};

// Signal (v, b(v)) of every state for the shift v with v ⊕ u = α restricted
// to S_i.  Entries past the block size use label 0.  α need not satisfy the
// CSP here.
template <class T>
SignalLabels additive_signal_labels(const AdditiveReduction<T>& red, const Assignment& alpha) {
  if (alpha.size() != red.csp().num_vars()) throw InvalidInput("assignment length differs from the CSP");
  const std::size_t s = red.csp().alphabet();
  const std::size_t len = red.block_length();
  SignalLabels out;
  for (std::size_t v = 0; v < red.num_shifts(); ++v)
    for (std::size_t c = 0; c < 2; ++c)
      out.signals.push_back("v=" + AdditiveReduction<T>::digits_string(unpack_digits(v, s, len)) +
                            "/c=" + std::to_string(c));
  out.label.resize(red.num_states());
  for (std::size_t st = 0; st < red.num_states(); ++st) {
    const auto state = red.decode_state(st);
    std::vector<std::size_t> v(len, 0);
    const auto& vars = red.partition().blocks[state.i];
    for (std::size_t l = 0; l < len; ++l) v[l] = ((l < vars.size() ? alpha[vars[l]] : 0) + s - state.u[l]) % s;
    out.label[st] = pack_digits(v, s) * 2 + red.bit(state, v);
  }
  return out;
}

// Deterministic scheme from additive_signal_labels plus Alice's completeness
// strategy for each signal: fixed (v, b(v)), uniform j and T, and w = β_j
// where v ⊕ β_j = α restricted to S_j.
template <class T>
CompletenessWitness<T> additive_completeness_scheme(const AdditiveReduction<T>& red, const Assignment& alpha) {
  require_satisfying(red.csp(), alpha);
  const std::size_t s = red.csp().alphabet();
  const std::size_t len = red.block_length();
  const std::size_t m = red.num_blocks();
  auto beta = [&](std::size_t block, const std::vector<std::size_t>& v) {
    std::vector<std::size_t> out(len, 0);
    const auto& vars = red.partition().blocks[block];
    for (std::size_t l = 0; l < len; ++l) out[l] = ((l < vars.size() ? alpha[vars[l]] : 0) + s - v[l]) % s;
    return out;
  };
  auto labels = additive_signal_labels(red, alpha);
  std::vector<std::string> ids(red.num_states());
  for (std::size_t st = 0; st < red.num_states(); ++st) ids[st] = red.state_id(st);
  const auto& names = labels.signals;
  CompletenessWitness<T> out{SignalingScheme<T>::deterministic(ids, labels.label, names), {}};

  const std::size_t subsets = binomial(m, red.subset_size());
  const T weight = from_ratio<T>(1, static_cast<std::int64_t>(m * subsets));
  for (std::size_t sig = 0; sig < names.size(); ++sig) {
    std::vector<T> x(red.num_strategies(), T(0));
    const auto v = unpack_digits(sig / 2, s, len);
    for (std::size_t j = 0; j < m; ++j) {
      const auto w = beta(j, v);
      for (std::size_t t = 0; t < subsets; ++t) {
        AdditiveStrategy a{v, sig % 2, j, combination_unrank(t, m, red.subset_size()), w, 0};
        x[red.encode_strategy(a)] = weight;
      }
    }
    out.alice.push_back(MixedStrategy<T>{std::move(x)});
  }
  return out;
}

// Bob copies Alice's (v, c) marginal, draws j uniformly, plays the half set
// T carrying most of Alice's j-marginal, and draws w from Alice's w given
// j (uniform when Alice never plays j).
template <class T>
MixedStrategy<T> mimic_response_additive(const AdditiveReduction<T>& red, const MixedStrategy<T>& alice) {
  if (alice.size() != red.num_strategies()) throw InvalidInput("strategy dimension mismatch");
  const std::size_t m = red.num_blocks();
  const std::size_t shifts = red.num_shifts();
  const std::size_t s = red.csp().alphabet();
  std::vector<T> vc(shifts * 2, T(0)), jm(m, T(0)), jw(m * shifts, T(0));
  for (std::size_t r = 0; r < alice.size(); ++r) {
    if (alice[r] == T(0)) continue;
    const auto a = red.decode_strategy(r);
    const std::size_t w = pack_digits(a.w, s);
    vc[pack_digits(a.v, s) * 2 + a.c] += alice[r];
    jm[a.j] += alice[r];
    jw[a.j * shifts + w] += alice[r];
  }
  const auto guess = top_entries(jm, red.subset_size());
  const T pick_j = from_ratio<T>(1, static_cast<std::int64_t>(m));
  const T uniform_w = from_ratio<T>(1, static_cast<std::int64_t>(shifts));
  std::vector<T> y(red.num_strategies(), T(0));
  for (std::size_t key = 0; key < vc.size(); ++key) {
    if (vc[key] == T(0)) continue;
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t w = 0; w < shifts; ++w) {
        const T cond = jm[j] == T(0) ? uniform_w : jw[j * shifts + w] / jm[j];
        if (cond == T(0)) continue;
        AdditiveStrategy b{unpack_digits(key / 2, s, red.block_length()), key % 2, j, guess,
                           unpack_digits(w, s, red.block_length()), 0};
        y[red.encode_strategy(b)] += vc[key] * pick_j * cond;
      }
  }
  return MixedStrategy<T>{std::move(y)};
}

}  // namespace zsig
