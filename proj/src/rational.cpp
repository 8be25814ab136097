#include "hecke/rational.hpp"

#include <cctype>

#include "hecke/error.hpp"

namespace hecke {

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

Integer integer_from(std::string_view s) {
  if (!is_integer_literal(s)) {
    throw Error(ErrorKind::ParseError, "not an integer: '" + std::string(s) + "'");
  }
  if (s[0] == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

}  // namespace

Integer parse_integer(std::string_view text) { return integer_from(text); }

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(integer_from(text));
  Integer num = integer_from(text.substr(0, slash));
  Integer den = integer_from(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator in '" + std::string(text) + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace hecke
