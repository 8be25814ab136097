#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace hecke {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical "p/q" form with q > 0; integers are written "p/1".
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Accepts "p/q" or "p". Throws Error(ParseError) on malformed input and
/// Error(DivisionByZero) on q = 0. The result is always reduced.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace hecke
