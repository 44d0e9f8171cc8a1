#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

#include "cilie/errors.hpp"

namespace cilie {

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator (gmpxx canonicalizes after every operation).
using Rational = mpq_class;

using Vector = std::vector<Rational>;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "p" or "p/q" with optional sign; q must be positive.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  auto is_int = [](std::string_view t, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !t.empty() && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!is_int(num, true) || !is_int(den, false))
    throw ParseError("malformed rational '" + s + "'");
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  mpz_class n(num), d(den);
  if (d == 0) throw ParseError("zero denominator in '" + s + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_zero(const Vector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace cilie
