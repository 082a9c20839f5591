#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace tdm::cohring {

using Rational = mpq_class;

// Parses "3", "-7/4" or "+2". Throws ParseError on anything else.
Rational parse_rational(std::string_view text);

// Canonical "p/q" text (or "p" when q == 1).
std::string to_string(const Rational& q);

// n/d in canonical form.
inline Rational frac(long n, long d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

// Floor of a rational, as a machine integer.
long floor_to_long(const Rational& q);

// Rising factorial a (a+1) ... (a+n-1); n >= 0.
Rational rising_factorial(const Rational& a, long n);

Rational factorial(long n);

}  // namespace tdm::cohring
