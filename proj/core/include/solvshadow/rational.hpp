#ifndef SOLVSHADOW_RATIONAL_HPP
#define SOLVSHADOW_RATIONAL_HPP

#include <gmpxx.h>

#include <optional>
#include <string>

#include "solvshadow/errors.hpp"

namespace solvshadow {

/// Arbitrary-precision rational, always canonical: lowest terms, positive
/// denominator.  mpq_class keeps that form as long as values are built
/// through the helpers below.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline int sign(const Rational& q) { return sgn(q); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Parses "p" or "p/q" with optional sign; rejects zero denominators.
inline std::optional<Rational> parse_rational(const std::string& s) {
  if (s.empty()) return std::nullopt;
  for (char c : s) {
    if (!(c == '-' || c == '+' || c == '/' || (c >= '0' && c <= '9'))) return std::nullopt;
  }
  mpq_class q;
  if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0) return std::nullopt;
  if (q.get_den() == 0) return std::nullopt;
  q.canonicalize();
  return q;
}

/// Canonical text form: "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational rat_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

} // namespace solvshadow

#endif
