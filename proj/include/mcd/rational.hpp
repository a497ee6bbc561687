#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "mcd/error.hpp"

namespace mcd {

/// Arbitrary precision rational, always kept in lowest terms with a positive
/// denominator (gmp canonical form).
using Rational = mpq_class;

/// num/den in canonical form (the two-argument mpq constructor does not reduce).
inline Rational ratio(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline int sign(const Rational& q) { return sgn(q); }

/// Serialized form is always "p/q", including integers ("3/1").
inline std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational parse_rational(std::string_view text) {
  auto bad = [&] { return Error(ErrorCode::FormatError, "bad rational '" + std::string(text) + "'"); };
  if (text.empty()) throw bad();
  auto slash = text.find('/');
  std::string num(text.substr(0, slash));
  std::string den = slash == std::string_view::npos ? std::string("1") : std::string(text.substr(slash + 1));
  auto valid_int = [](const std::string& s, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  if (!valid_int(num, true) || !valid_int(den, false)) throw bad();
  mpz_class n(num[0] == '+' ? num.substr(1) : num, 10);
  mpz_class d(den, 10);
  if (d == 0) throw bad();
  Rational q(n, d);
  q.canonicalize();
  return q;
}

inline double to_double(const Rational& q) { return q.get_d(); }

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace mcd
