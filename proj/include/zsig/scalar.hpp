#pragma once

// Numeric modes shared by every module: IEEE double with explicit
// tolerances, and exact rationals for small exact regressions.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

#include <boost/multiprecision/cpp_int.hpp>

#include "zsig/error.hpp"

namespace zsig {

using Rational = boost::multiprecision::number<
    boost::multiprecision::cpp_rational_backend,
    boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<
    boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;

template <class T>
struct Numeric;

template <>
struct Numeric<double> {
  static constexpr bool exact = false;
  static constexpr const char* name = "double";
  // Pivot and reduced-cost threshold of the simplex.
  static double eps() { return 1e-10; }
  // Comparison slack for value claims.
  static double tolerance() { return 1e-9; }
};

template <>
struct Numeric<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* name = "rational";
  static Rational eps() { return Rational(0); }
  static Rational tolerance() { return Rational(0); }
};

template <class T>
concept Scalar = requires { Numeric<T>::exact; };

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) {
  return x.convert_to<double>();
}

template <class T>
T abs_value(const T& x) {
  return x < T(0) ? T(-x) : x;
}

// x > eps in the numeric mode's sense.
template <class T>
bool is_positive(const T& x) {
  return x > Numeric<T>::eps();
}

template <class T>
bool is_zero(const T& x) {
  return abs_value(x) <= Numeric<T>::eps();
}

template <class T>
T from_ratio(std::int64_t p, std::int64_t q) {
  if (q == 0) throw InvalidInput("zero denominator");
  if constexpr (std::is_same_v<T, double>) {
    return static_cast<double>(p) / static_cast<double>(q);
  } else {
    return Rational(BigInt(p), BigInt(q));
  }
}

template <class T>
T power(const T& base, int exponent) {
  T result(1);
  for (int i = 0; i < exponent; ++i) result *= base;
  return result;
}

namespace detail {

inline Rational parse_decimal_rational(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  BigInt mantissa = 0;
  int scale = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    char ch = text[pos];
    if (ch >= '0' && ch <= '9') {
      mantissa = mantissa * 10 + (ch - '0');
      if (seen_point) ++scale;
      seen_digit = true;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw InvalidInput("malformed number '" + std::string(text) + "'");
  int exponent = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    std::string rest(text.substr(pos));
    std::size_t used = 0;
    try {
      exponent = std::stoi(rest, &used);
    } catch (const std::exception&) {
      throw InvalidInput("malformed exponent in '" + std::string(text) + "'");
    }
    pos += used;
  }
  if (pos != text.size()) {
    throw InvalidInput("trailing characters in number '" + std::string(text) + "'");
  }
  exponent -= scale;
  BigInt ten_power = 1;
  for (int i = 0; i < std::abs(exponent); ++i) ten_power *= 10;
  Rational value = exponent >= 0 ? Rational(mantissa * ten_power)
                                 : Rational(mantissa, ten_power);
  return negative ? Rational(-value) : value;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace detail

// Accepts decimals ("0.25", "-3", "1e-3") and ratios ("p/q").
template <class T>
T parse_scalar(std::string_view text) {
  text = detail::trim(text);
  if (text.empty()) throw InvalidInput("empty number");
  auto slash = text.find('/');
  Rational value;
  if (slash == std::string_view::npos) {
    value = detail::parse_decimal_rational(text);
  } else {
    Rational num = detail::parse_decimal_rational(detail::trim(text.substr(0, slash)));
    Rational den = detail::parse_decimal_rational(detail::trim(text.substr(slash + 1)));
    if (den == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
    value = num / den;
  }
  if constexpr (std::is_same_v<T, double>) {
    if (slash == std::string_view::npos) {
      // strtod gives the correctly rounded double for decimal input.
      return std::strtod(std::string(text).c_str(), nullptr);
    }
    return to_double(value);
  } else {
    return value;
  }
}

// Shortest text that parses back to the same double.
inline std::string format_scalar(double x) {
  char buffer[64];
  const auto end = std::to_chars(buffer, buffer + sizeof buffer, x).ptr;
  return std::string(buffer, end);
}

inline std::string format_scalar(const Rational& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

template <class To, class From>
To convert_scalar(const From& x) {
  if constexpr (std::is_same_v<To, From>) {
    return x;
  } else if constexpr (std::is_same_v<To, double>) {
    return to_double(x);
  } else {
    return Rational(x);
  }
}

}  // namespace zsig
