#pragma once

// The single-variable construction: nature draws (b⃗, i, u), Alice chooses
// (v, c, j, t, w), Bob chooses (v, c, j, t, q, w) and Alice receives
// U_b + U_seek + U_ψ with
//   U_b    = (1{c^A = b_{v^A}} - 1{c^B = b_{v^B}}) / n,
//   U_seek = 2·1{j^B = t^A} - 1{j^A = t^B} - 1{i = q^B},
//   U_ψ    = δ³ τ^{A,Z} - δ⁴ τ^{B,Z} + δ⁵ τ^{A,B}.
// States are mixed radix (b⃗, i, u) with b⃗ packed as an integer whose bit v
// is b_v.  Strategies are mixed radix in the order listed above.

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
#include "zsig/reductions/additive.hpp"
#include "zsig/reductions/params.hpp"
#include "zsig/signaling.hpp"

namespace zsig {

struct MultiplicativeState {
  std::uint64_t b = 0;
  std::size_t i = 0;
  std::size_t u = 0;
  bool bit(std::size_t v) const { return b >> v & 1; }
};

struct MultiplicativeAlice {
  std::size_t v = 0, c = 0, j = 0, t = 0, w = 0;
};

struct MultiplicativeBob {
  std::size_t v = 0, c = 0, j = 0, t = 0, q = 0, w = 0;
};

template <class T>
class MultiplicativeReduction {
 public:
  MultiplicativeReduction(const MultiplicativeReduction&) = delete;
  MultiplicativeReduction& operator=(const MultiplicativeReduction&) = delete;

  static std::shared_ptr<const MultiplicativeReduction> create(Csp2Instance csp, ReductionParams<T> params) {
    return std::shared_ptr<const MultiplicativeReduction>(
        new MultiplicativeReduction(std::move(csp), std::move(params)));
  }

  const Csp2Instance& csp() const { return csp_; }
  const ReductionParams<T>& params() const { return params_; }
  std::size_t num_states() const { return states_.size(); }
  std::size_t num_alice() const { return alice_.size(); }
  std::size_t num_bob() const { return bob_.size(); }

  MultiplicativeState decode_state(std::size_t index) const {
    const auto d = states_.decode(index);
    return {static_cast<std::uint64_t>(d[0]), d[1], d[2]};
  }
  std::size_t encode_state(const MultiplicativeState& s) const {
    return states_.encode({static_cast<std::size_t>(s.b), s.i, s.u});
  }
  MultiplicativeAlice decode_alice(std::size_t index) const {
    const auto d = alice_.decode(index);
    return {d[0], d[1], d[2], d[3], d[4]};
  }
  std::size_t encode_alice(const MultiplicativeAlice& a) const { return alice_.encode({a.v, a.c, a.j, a.t, a.w}); }
  MultiplicativeBob decode_bob(std::size_t index) const {
    const auto d = bob_.decode(index);
    return {d[0], d[1], d[2], d[3], d[4], d[5]};
  }
  std::size_t encode_bob(const MultiplicativeBob& b) const { return bob_.encode({b.v, b.c, b.j, b.t, b.q, b.w}); }

  std::string state_id(std::size_t index) const {
    const auto s = decode_state(index);
    std::string bits;
    for (std::size_t v = 0; v < csp_.alphabet(); ++v) bits += s.bit(v) ? '1' : '0';
    return "b=" + bits + "/i=" + std::to_string(s.i) + "/u=" + std::to_string(s.u);
  }

  PayoffParts<T> payoff_parts(const MultiplicativeState& s, const MultiplicativeAlice& a,
                              const MultiplicativeBob& b) const {
    PayoffParts<T> p;
    p.bits = T(int(a.c == std::size_t(s.bit(a.v))) - int(b.c == std::size_t(s.bit(b.v)))) / n_;
    p.guessing = T(2 * int(b.j == a.t) - int(a.j == b.t) - int(s.i == b.q));
    const auto tau = tau_multiplicative(csp_, a.v, b.v, a.j, a.w, b.j, b.w, s.i, s.u);
    p.consistency =
        consistency_[std::size_t(tau.alice_nature) | std::size_t(tau.bob_nature) << 1 | std::size_t(tau.alice_bob) << 2];
    return p;
  }

  T payoff(std::size_t state, std::size_t alice, std::size_t bob) const {
    return payoff_parts(state_cache_.at(state), alice_cache_.at(alice), bob_cache_.at(bob)).total();
  }

  BayesianGame<T> game(std::shared_ptr<const MultiplicativeReduction> self) const {
    if (self.get() != this) throw InvalidInput("game() needs the owning pointer");
    std::vector<GameState<T>> states;
    for (std::size_t s = 0; s < num_states(); ++s) {
      states.push_back({state_id(s), ZeroSumMatrix<T>::from_oracle(
                                         num_alice(), num_bob(),
                                         [self, s](std::size_t r, std::size_t c) { return self->payoff(s, r, c); })});
    }
    const T weight = from_ratio<T>(1, static_cast<std::int64_t>(num_states()));
    return BayesianGame<T>(std::move(states), std::vector<T>(num_states(), weight));
  }

  // (d/n)(δ³ - δ⁴ + δ⁵).
  T completeness_value() const { return T(csp_.degree()) * consistency_[7] / n_; }

 private:
  MultiplicativeReduction(Csp2Instance csp, ReductionParams<T> params)
      : csp_(std::move(csp)), params_(std::move(params)) {
    params_.validate();
    const std::size_t n = csp_.num_vars();
    const std::size_t s = csp_.alphabet();
    if (s > 63) throw SizeLimitExceeded("alphabet of " + std::to_string(s) + " labels is too large");
    n_ = T(static_cast<std::int64_t>(n));
    states_ = MixedRadix({std::size_t{1} << s, n, s}, "multiplicative state space");
    alice_ = MixedRadix({s, 2, n, n, s}, "multiplicative Alice strategy space");
    bob_ = MixedRadix({s, 2, n, n, n, s}, "multiplicative Bob strategy space");
    for (const auto* space : {&states_, &alice_, &bob_})
      if (space->size() > kMaxEnumerated)
        throw SizeLimitExceeded("multiplicative construction has " + std::to_string(space->size()) +
                                " entries in one coordinate space, limit " + std::to_string(kMaxEnumerated));
    const T d = params_.delta;
    const T d3 = d * d * d;
    for (std::size_t code = 0; code < 8; ++code) {
      T value(0);
      if (code & 1) value += d3;
      if (code & 2) value -= d3 * d;
      if (code & 4) value += d3 * d * d;
      consistency_[code] = value;
    }
    for (std::size_t x = 0; x < states_.size(); ++x) state_cache_.push_back(decode_state(x));
    for (std::size_t x = 0; x < alice_.size(); ++x) alice_cache_.push_back(decode_alice(x));
    for (std::size_t x = 0; x < bob_.size(); ++x) bob_cache_.push_back(decode_bob(x));
  }

  Csp2Instance csp_;
  ReductionParams<T> params_;
  T n_{};
  MixedRadix states_;
  MixedRadix alice_;
  MixedRadix bob_;
  std::array<T, 8> consistency_{};
  std::vector<MultiplicativeState> state_cache_;
  std::vector<MultiplicativeAlice> alice_cache_;
  std::vector<MultiplicativeBob> bob_cache_;
};

inline std::string multiplicative_signal_id(std::size_t v, std::size_t c) {
  return "v=" + std::to_string(v) + "/c=" + std::to_string(c);
}

// Signal (v, b_v) of every state for the shift v with v ⊕ u = α_i.  α need
// not satisfy the CSP here.
template <class T>
SignalLabels multiplicative_signal_labels(const MultiplicativeReduction<T>& red, const Assignment& alpha) {
  if (alpha.size() != red.csp().num_vars()) throw InvalidInput("assignment length differs from the CSP");
  const std::size_t s = red.csp().alphabet();
  SignalLabels out;
  for (std::size_t v = 0; v < s; ++v)
    for (std::size_t c = 0; c < 2; ++c) out.signals.push_back(multiplicative_signal_id(v, c));
  out.label.resize(red.num_states());
  for (std::size_t st = 0; st < red.num_states(); ++st) {
    const auto state = red.decode_state(st);
    const std::size_t v = (alpha[state.i] + s - state.u) % s;
    out.label[st] = v * 2 + std::size_t(state.bit(v));
  }
  return out;
}

// Deterministic scheme from multiplicative_signal_labels; β = α ⊖ v is a
// function of v.  Alice's strategy per signal fixes (v, b_v), draws j and t
// uniformly and answers w = β_j.
template <class T>
CompletenessWitness<T> multiplicative_completeness_scheme(const MultiplicativeReduction<T>& red,
                                                          const Assignment& alpha) {
  require_satisfying(red.csp(), alpha);
  const std::size_t s = red.csp().alphabet();
  const std::size_t n = red.csp().num_vars();
  auto labels = multiplicative_signal_labels(red, alpha);
  const auto& names = labels.signals;
  std::vector<std::string> ids(red.num_states());
  for (std::size_t st = 0; st < red.num_states(); ++st) ids[st] = red.state_id(st);
  CompletenessWitness<T> out{SignalingScheme<T>::deterministic(ids, labels.label, names), {}};
  const T weight = from_ratio<T>(1, static_cast<std::int64_t>(n * n));
  for (std::size_t sig = 0; sig < names.size(); ++sig) {
    std::vector<T> x(red.num_alice(), T(0));
    const std::size_t v = sig / 2;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t t = 0; t < n; ++t) x[red.encode_alice({v, sig % 2, j, t, (alpha[j] + s - v) % s})] = weight;
    out.alice.push_back(MixedStrategy<T>{std::move(x)});
  }
  return out;
}

// Bob copies Alice's (v, c) marginal, draws j uniformly, seeks with t at the
// mode of Alice's j-marginal and with q at the mode of the posterior's
// i-marginal (ties to the lowest index), and draws w from Alice's w given j.
template <class T>
MixedStrategy<T> mimic_response_multiplicative(const MultiplicativeReduction<T>& red, const MixedStrategy<T>& alice,
                                               const std::vector<T>& posterior) {
  if (alice.size() != red.num_alice() || posterior.size() != red.num_states())
    throw InvalidInput("strategy or posterior dimension mismatch");
  const std::size_t s = red.csp().alphabet();
  const std::size_t n = red.csp().num_vars();
  std::vector<T> vc(s * 2, T(0)), jm(n, T(0)), jw(n * s, T(0)), im(n, T(0));
  for (std::size_t r = 0; r < alice.size(); ++r) {
    if (alice[r] == T(0)) continue;
    const auto a = red.decode_alice(r);
    vc[a.v * 2 + a.c] += alice[r];
    jm[a.j] += alice[r];
    jw[a.j * s + a.w] += alice[r];
  }
  for (std::size_t st = 0; st < posterior.size(); ++st) im[red.decode_state(st).i] += posterior[st];
  const std::size_t t = top_entries(jm, 1).front();
  const std::size_t q = top_entries(im, 1).front();
  const T pick_j = from_ratio<T>(1, static_cast<std::int64_t>(n));
  const T uniform_w = from_ratio<T>(1, static_cast<std::int64_t>(s));
  std::vector<T> y(red.num_bob(), T(0));
  for (std::size_t key = 0; key < vc.size(); ++key) {
    if (vc[key] == T(0)) continue;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t w = 0; w < s; ++w) {
        const T cond = jm[j] == T(0) ? uniform_w : jw[j * s + w] / jm[j];
        if (cond == T(0)) continue;
        y[red.encode_bob({key / 2, key % 2, j, t, q, w})] += vc[key] * pick_j * cond;
      }
  }
  return MixedStrategy<T>{std::move(y)};
}

}  // namespace zsig
