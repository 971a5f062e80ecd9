#pragma once

// Building blocks shared by the hardness constructions.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

#include "zsig/csp.hpp"
#include "zsig/error.hpp"
#include "zsig/scalar.hpp"

namespace zsig {

// Bit table b̂ over (label, position) pairs; entry (s, l) at s * length + l.
struct AuxBits {
  std::size_t alphabet = 0;
  std::size_t length = 0;
  std::vector<std::uint8_t> bits;

  static AuxBits from_integer(std::uint64_t packed, std::size_t alphabet, std::size_t length) {
    AuxBits b{alphabet, length, std::vector<std::uint8_t>(alphabet * length)};
    for (std::size_t x = 0; x < b.bits.size(); ++x) b.bits[x] = packed >> x & 1;
    return b;
  }

  std::uint8_t at(std::size_t label, std::size_t position) const { return bits.at(label * length + position); }
};

// XOR of the table entries selected by v: position l contributes (v[l], l).
inline std::uint8_t pairwise_bit(const AuxBits& table, const std::vector<std::size_t>& v) {
  if (v.size() != table.length) throw InvalidInput("vector length differs from the bit table");
  std::uint8_t out = 0;
  for (std::size_t l = 0; l < v.size(); ++l) {
    if (v[l] >= table.alphabet) throw InvalidInput("label out of range");
    out ^= table.at(v[l], l);
  }
  return out;
}

template <class T>
struct HalfSet {
  std::vector<std::size_t> members;
  T advantage{};
};

// The `size` largest entries of p (ties to the lower index), sorted.
template <class T>
std::vector<std::size_t> top_entries(const std::vector<T>& p, std::size_t size) {
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p[a] > p[b]; });
  order.resize(std::min(size, order.size()));
  std::sort(order.begin(), order.end());
  return order;
}

// Half of the indices carrying the most mass, with p(T) - 1/2.
template <class T>
HalfSet<T> best_half_set(const std::vector<T>& p) {
  if (p.empty() || p.size() % 2 != 0) throw InvalidInput("best_half_set needs an even, nonzero length");
  HalfSet<T> out{top_entries(p, p.size() / 2), T(0)};
  T mass(0);
  for (std::size_t x : out.members) mass += p[x];
  out.advantage = mass - from_ratio<T>(1, 2);
  return out;
}

template <class T>
T total_variation_from_uniform(const std::vector<T>& p) {
  const T uniform = from_ratio<T>(1, static_cast<std::int64_t>(p.size()));
  T total(0);
  for (const T& x : p) total += abs_value(T(x - uniform));
  return total / T(2);
}

inline std::vector<std::size_t> shift_labels(const std::vector<std::size_t>& v, const std::vector<std::size_t>& w,
                                             std::size_t alphabet) {
  if (v.size() != w.size()) throw InvalidInput("shifted vectors differ in length");
  std::vector<std::size_t> out(v.size());
  for (std::size_t l = 0; l < v.size(); ++l) out[l] = (v[l] + w[l]) % alphabet;
  return out;
}

// Constraint checks between partial assignments to two blocks of a
// partition.  A block assignment is a vector of length 2k whose entry l
// labels the l-th smallest variable of the block; trailing entries beyond the
// block size are ignored.
class BlockChecker {
 public:
  BlockChecker(const Csp2Instance& csp, const Partition& partition) : csp_(&csp), partition_(&partition) {
    const std::size_t m = partition.blocks.size();
    position_.assign(csp.num_vars(), 0);
    for (const auto& block : partition.blocks) {
      if (!std::is_sorted(block.begin(), block.end())) throw InvalidInput("partition blocks must be sorted");
      for (std::size_t l = 0; l < block.size(); ++l) position_[block[l]] = l;
    }
    between_.assign(m * m, {});
    for (std::size_t e = 0; e < csp.num_edges(); ++e) {
      const std::size_t a = partition.block_of.at(csp.edge(e).u);
      const std::size_t b = partition.block_of.at(csp.edge(e).v);
      between_[a * m + b].push_back(e);
      if (a != b) between_[b * m + a].push_back(e);
    }
  }

  std::size_t num_blocks() const { return partition_->blocks.size(); }
  std::size_t block_length() const { return 2 * partition_->k; }

  // Whether `first` on block j and `second` on block i satisfy every edge
  // with both endpoints in S_i ∪ S_j.  Edges inside S_j read `first`, edges
  // inside S_i read `second`, cross edges read one of each.  When i == j the
  // two assignments must coincide on the block, otherwise the check fails.
  bool consistent(std::size_t j, const std::vector<std::size_t>& first, std::size_t i,
                  const std::vector<std::size_t>& second) const {
    const auto& bj = partition_->blocks.at(j);
    const auto& bi = partition_->blocks.at(i);
    if (first.size() < bj.size() || second.size() < bi.size())
      throw InvalidInput("block assignment shorter than the block");
    const std::size_t m = num_blocks();
    if (i == j) {
      for (std::size_t l = 0; l < bj.size(); ++l)
        if (first[l] != second[l]) return false;
      for (std::size_t e : between_[j * m + j])
        if (!satisfied(e, first, first)) return false;
      return true;
    }
    for (std::size_t e : between_[j * m + j])
      if (!satisfied(e, first, first)) return false;
    for (std::size_t e : between_[i * m + i])
      if (!satisfied(e, second, second)) return false;
    for (std::size_t e : between_[j * m + i]) {
      const auto& edge = csp_->edge(e);
      const bool u_in_j = partition_->block_of[edge.u] == j;
      const std::size_t lu = (u_in_j ? first : second)[position_[edge.u]];
      const std::size_t lv = (u_in_j ? second : first)[position_[edge.v]];
      if (!csp_->allows(e, lu, lv)) return false;
    }
    return true;
  }

 private:
  // Both endpoints lie in one block; a and b are the same assignment.
  bool satisfied(std::size_t e, const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) const {
    const auto& edge = csp_->edge(e);
    return csp_->allows(e, a[position_[edge.u]], b[position_[edge.v]]);
  }

  const Csp2Instance* csp_;
  const Partition* partition_;
  std::vector<std::size_t> position_;
  std::vector<std::vector<std::size_t>> between_;
};

struct TauBits {
  bool alice_nature = false;
  bool bob_nature = false;
  bool alice_bob = false;
};

// τ predicates of the block construction.  Assignments are shifted by the
// common v before checking; all three are 0 when the players' v differ.
inline TauBits tau_additive(const BlockChecker& checker, std::size_t alphabet, const std::vector<std::size_t>& v_alice,
                            const std::vector<std::size_t>& v_bob, std::size_t j_alice,
                            const std::vector<std::size_t>& w_alice, std::size_t j_bob,
                            const std::vector<std::size_t>& w_bob, std::size_t i, const std::vector<std::size_t>& u) {
  if (v_alice != v_bob) return {};
  const auto& v = v_alice;
  const auto alice = shift_labels(v, w_alice, alphabet);
  const auto bob = shift_labels(v, w_bob, alphabet);
  const auto nature = shift_labels(v, u, alphabet);
  return {checker.consistent(j_alice, alice, i, nature), checker.consistent(j_bob, bob, i, nature),
          checker.consistent(j_alice, alice, j_bob, bob)};
}

// Single-variable check: 1 iff {a, b} is an edge of ψ and the shifted labels
// (v + la on a, v + lb on b) satisfy it.
inline bool variable_consistent(const Csp2Instance& csp, std::size_t v, std::size_t a, std::size_t la,
                                std::size_t b, std::size_t lb) {
  if (!csp.find_edge(a, b)) return false;
  const std::size_t s = csp.alphabet();
  return csp.satisfies(a, (v + la) % s, b, (v + lb) % s);
}

inline TauBits tau_multiplicative(const Csp2Instance& csp, std::size_t v_alice, std::size_t v_bob,
                                  std::size_t j_alice, std::size_t w_alice, std::size_t j_bob, std::size_t w_bob,
                                  std::size_t i, std::size_t u) {
  if (v_alice != v_bob) return {};
  const std::size_t v = v_alice;
  return {variable_consistent(csp, v, j_alice, w_alice, i, u), variable_consistent(csp, v, j_bob, w_bob, i, u),
          variable_consistent(csp, v, j_alice, w_alice, j_bob, w_bob)};
}

}  // namespace zsig
