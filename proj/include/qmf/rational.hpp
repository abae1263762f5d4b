#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "qmf/errors.hpp"

namespace qmf {

// Exact arbitrary-precision rational. Every arithmetic value the library
// reports (form entries, estimates, envelopes) is one of these; nothing is
// ever rounded to floating point.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Accepts "p/q", "p", optional leading '-' on either part.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ValidationError("empty rational literal");
  try {
    Rational q(s);
    if (q.get_den() == 0) throw ValidationError("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw ValidationError("malformed rational literal '" + s + "'");
  }
}

// Canonical "p/q" (or "p" when the denominator is 1); inverse of parse_rational.
inline std::string rational_to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational rational_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace qmf
