#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "trec/common.hpp"

namespace trec {

// Exact rational arithmetic.  mpq_class already provides canonical form
// (reduced fraction, positive denominator); the helpers below add the
// serialization format and the handful of number-theoretic sequences the
// rest of the library needs.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw MathError("rat: zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Parse "p/q" or "p" (optionally signed).  Throws MathError on malformed
// input or zero denominator.
Rational parseRational(const std::string& text);

// Serialize as "p/q" with q always present and positive, e.g. "-1/64", "3/1".
std::string ratString(const Rational& value);

// value^exponent for integer exponent (negative allowed when value != 0).
Rational ratPow(const Rational& value, long exponent);

// n! as an exact rational (n >= 0).
Rational factorial(long n);

// Binomial coefficient C(n, k); zero when k < 0 or k > n.
Rational binomial(long n, long k);

// Odd double factorial (2m-1)!! extended downwards: value 1 at m = 0,
// (-1)!! = 1, (-3)!! = -1, via (2m-1)!! = (2m+1)!!/(2m+1).
Rational oddDoubleFactorial(long m);

// Bernoulli number B_n with the convention B_1 = -1/2.
Rational bernoulli(long n);

// Harmonic number H_d = 1 + 1/2 + ... + 1/d (H_0 = 0).
Rational harmonic(long d);

// Floating approximation (for tolerance-based comparisons only; all core
// computation stays exact).
double toDouble(const Rational& value);

}  // namespace trec
