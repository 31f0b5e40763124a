#pragma once

#include <gmpxx.h>

#include <regex>
#include <string>
#include <string_view>

#include "pdalg/errors.hpp"

namespace pdalg {

/// Exact rational in lowest terms with positive denominator.
using Rational = mpq_class;

inline Rational make_rational(long numerator, long denominator = 1) {
  if (denominator == 0) throw DivisionByZero();
  Rational r{mpz_class(numerator), mpz_class(denominator)};
  r.canonicalize();
  return r;
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

inline Rational inverse(const Rational& r) {
  if (is_zero(r)) throw DivisionByZero();
  return Rational(1) / r;
}

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational parse_rational(std::string_view text) {
  static const std::regex pattern(R"(^-?[0-9]+(/[0-9]+)?$)");
  const std::string s(text);
  if (!std::regex_match(s, pattern)) throw ParseError("", "not a rational: '" + s + "'");
  const auto slash = s.find('/');
  const mpz_class num(s.substr(0, slash), 10);
  const mpz_class den(slash == std::string::npos ? std::string("1") : s.substr(slash + 1), 10);
  if (den == 0) throw ParseError("", "zero denominator: '" + s + "'");
  Rational r{num, den};
  r.canonicalize();
  return r;
}

}  // namespace pdalg
