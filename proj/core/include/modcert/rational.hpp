#pragma once

// Arbitrary-precision integers and rationals, with the "p/q" text form used
// by certificates and distribution files.

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace modcert {

using BigInt = mpz_class;
/// Always kept canonical: gcd(|num|, den) = 1 and den >= 1.
using Rational = mpq_class;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "p", "p/q" or "-p/q" and returns the reduced value.
/// Throws ParseError on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p/q", or just "p" when the denominator is 1.
std::string to_string(const Rational& r);

BigInt parse_integer(std::string_view text);

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Exact r^k for k >= 0.
Rational pow(const Rational& r, unsigned k);

}  // namespace modcert
