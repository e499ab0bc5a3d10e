#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cctype>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace chargekit {

/// Exact rational number. Always reduced with a positive denominator.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

inline Rational make_rational(long long num, long long den = 1) {
  return Rational(Integer(num), Integer(den));
}

/// 2^-k as an exact rational.
inline Rational inverse_power_of_two(unsigned k) {
  Integer den = 1;
  den <<= k;
  return Rational(Integer(1), den);
}

inline Rational abs_value(const Rational& x) { return x < 0 ? Rational(-x) : x; }

inline const Rational& min_of(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max_of(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// Serializes as `p/q`, always with an explicit denominator.
inline std::string to_string(const Rational& x) {
  return numerator(x).str() + "/" + denominator(x).str();
}

/// Parses `p/q` or a bare integer `p`. Returns nullopt on malformed text or q = 0.
inline std::optional<Rational> parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char ch : s)
      if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    return true;
  };
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!digits(num) || !digits(den)) return std::nullopt;
  Integer n{std::string(num)};
  Integer d{std::string(den)};
  if (d == 0) return std::nullopt;
  if (negative) n = -n;
  return Rational(n, d);
}

}  // namespace chargekit
