#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "gapforge/error.hpp"

namespace gapforge {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt pow_big(const BigInt& base, std::uint64_t exponent) {
  BigInt result = 1;
  BigInt b = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent > 0) b *= b;
  }
  return result;
}

inline BigInt factorial(std::uint64_t n) {
  BigInt f = 1;
  for (std::uint64_t i = 2; i <= n; ++i) f *= i;
  return f;
}

// Ceiling of a nonnegative rational.
inline BigInt ceil_nonneg(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  return (num + den - 1) / den;
}

/// Parses "p/q", an integer, or a plain decimal such as "0.25" into an exact rational.
inline Rational parse_rational(std::string_view text) {
  auto bad = [&] { return InputError("not an exact decimal or fraction: '" + std::string(text) + "'"); };
  if (text.empty()) throw bad();
  auto digits = [](std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); });
  };
  bool negative = false;
  if (text.front() == '-' || text.front() == '+') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  // cpp_int treats a leading 0 as an octal prefix.
  auto integer = [](std::string_view s) {
    const auto nz = s.find_first_not_of('0');
    return BigInt(nz == std::string_view::npos ? std::string("0") : std::string(s.substr(nz)));
  };
  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!digits(num) || !digits(den)) throw bad();
    const BigInt d = integer(den);
    if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    value = Rational(integer(num), d);
  } else {
    auto dot = text.find('.');
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    if (whole.empty() && frac.empty()) throw bad();
    if ((!whole.empty() && !digits(whole)) || (!frac.empty() && !digits(frac))) throw bad();
    std::string all = std::string(whole) + std::string(frac);
    value = Rational(integer(all), pow_big(10, frac.size()));
  }
  return negative ? Rational(-value) : value;
}

inline std::string to_decimal(const BigInt& x) { return x.str(); }

inline std::string to_string(const Rational& q) {
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" + den.str();
}

}  // namespace gapforge
