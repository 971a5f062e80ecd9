#pragma once

// Bijections between flat indices and structured tuples: mixed-radix digit
// vectors and lexicographically ranked combinations.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "zsig/error.hpp"

namespace zsig {

// Exact product of `factors`, or SizeLimitExceeded naming `what`.
inline std::size_t checked_product(const std::vector<std::size_t>& factors, const std::string& what) {
  std::size_t total = 1;
  for (std::size_t f : factors) {
    if (f != 0 && total > std::numeric_limits<std::size_t>::max() / f)
      throw SizeLimitExceeded(what + " overflows a 64-bit index");
    total *= f;
  }
  return total;
}

inline std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::size_t result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    const std::size_t top = n - k + i;
    if (result > std::numeric_limits<std::size_t>::max() / top) throw SizeLimitExceeded("binomial coefficient overflow");
    result = result * top / i;
  }
  return result;
}

// Digit 0 is the most significant, so index order is lexicographic order on
// digit vectors.
class MixedRadix {
 public:
  MixedRadix() = default;
  explicit MixedRadix(std::vector<std::size_t> radices, const std::string& what = "index space")
      : radices_(std::move(radices)), size_(checked_product(radices_, what)) {
    for (std::size_t r : radices_)
      if (r == 0) throw InvalidInput(what + " has an empty coordinate");
  }

  std::size_t size() const { return size_; }
  std::size_t digits() const { return radices_.size(); }
  const std::vector<std::size_t>& radices() const { return radices_; }

  std::vector<std::size_t> decode(std::size_t index) const {
    if (index >= size_) throw InvalidInput("index " + std::to_string(index) + " out of range");
    std::vector<std::size_t> out(radices_.size());
    for (std::size_t d = radices_.size(); d-- > 0;) {
      out[d] = index % radices_[d];
      index /= radices_[d];
    }
    return out;
  }

  std::size_t encode(const std::vector<std::size_t>& digits) const {
    if (digits.size() != radices_.size()) throw InvalidInput("digit vector has wrong length");
    std::size_t index = 0;
    for (std::size_t d = 0; d < radices_.size(); ++d) {
      if (digits[d] >= radices_[d]) throw InvalidInput("digit out of range");
      index = index * radices_[d] + digits[d];
    }
    return index;
  }

 private:
  std::vector<std::size_t> radices_;
  std::size_t size_ = 1;
};

// Base-`radix` vector of `length` digits packed into one integer with
// entry 0 most significant.
inline std::size_t pack_digits(const std::vector<std::size_t>& digits, std::size_t radix) {
  std::size_t value = 0;
  for (std::size_t d : digits) value = value * radix + d;
  return value;
}

inline std::vector<std::size_t> unpack_digits(std::size_t value, std::size_t radix, std::size_t length) {
  std::vector<std::size_t> out(length);
  for (std::size_t d = length; d-- > 0;) {
    out[d] = value % radix;
    value /= radix;
  }
  return out;
}

// Rank of a strictly increasing k-subset of [0, n) among all k-subsets in
// lexicographic order.
inline std::size_t combination_rank(const std::vector<std::size_t>& subset, std::size_t n) {
  const std::size_t k = subset.size();
  std::size_t rank = 0;
  std::size_t next = 0;
  for (std::size_t pos = 0; pos < k; ++pos) {
    if (subset[pos] >= n || (pos > 0 && subset[pos] <= subset[pos - 1]))
      throw InvalidInput("combination must be strictly increasing and in range");
    for (std::size_t x = next; x < subset[pos]; ++x) rank += binomial(n - x - 1, k - pos - 1);
    next = subset[pos] + 1;
  }
  return rank;
}

inline std::vector<std::size_t> combination_unrank(std::size_t rank, std::size_t n, std::size_t k) {
  if (rank >= binomial(n, k)) throw InvalidInput("combination rank out of range");
  std::vector<std::size_t> out;
  std::size_t x = 0;
  for (std::size_t pos = 0; pos < k; ++pos) {
    while (true) {
      const std::size_t block = binomial(n - x - 1, k - pos - 1);
      if (rank < block) break;
      rank -= block;
      ++x;
    }
    out.push_back(x++);
  }
  return out;
}

}  // namespace zsig
