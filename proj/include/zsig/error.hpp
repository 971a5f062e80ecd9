#pragma once

#include <stdexcept>
#include <string>

namespace zsig {

// Caller supplied something outside an operation's contract.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A strategy space or enumeration exceeds its configured budget.
class SizeLimitExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

// An internal guarantee failed; indicates a bug rather than bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace zsig
