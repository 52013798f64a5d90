#pragma once

#include <string>
#include <vector>

#include "trec/rational.hpp"

namespace trec {

// A point a local expansion is anchored at: a finite rational point or the
// point at infinity.  Series at infinity are stored in the coordinate
// w = 1/z, with exponents referring to powers of w.
struct ExpansionPoint {
  bool atInfinity = false;
  Rational value = 0;

  static ExpansionPoint finite(const Rational& a) { return {false, a}; }
  static ExpansionPoint infinity() { return {true, 0}; }

  bool operator==(const ExpansionPoint& other) const {
    return atInfinity == other.atInfinity && (atInfinity || value == other.value);
  }
  bool operator!=(const ExpansionPoint& other) const { return !(*this == other); }
  std::string str() const { return atInfinity ? "inf" : ratString(value); }
};

// Truncated Laurent series sum_{e} c_e u^e in the local coordinate u at an
// expansion point (u = z - a at a finite point, u = 1/z at infinity, or an
// abstract variable such as hbar when used standalone).
//
// Coefficients are known exactly for exponents e with lowest() <= e < order();
// exponents below lowest() are exactly zero; asking for an exponent at or
// above order() throws TruncationError, so truncation loss is never silent.
class LaurentSeries {
public:
  LaurentSeries() = default;
  static LaurentSeries zero(ExpansionPoint pt, int order);
  // c * u^exponent, known through the given order.
  static LaurentSeries monomial(ExpansionPoint pt, int exponent, const Rational& c,
                                int order);
  static LaurentSeries constant(ExpansionPoint pt, const Rational& c, int order);

  const ExpansionPoint& point() const { return point_; }
  int lowest() const { return lo_; }
  int order() const { return order_; }

  Rational coeff(int exponent) const;
  void setCoeff(int exponent, const Rational& c);
  void addCoeff(int exponent, const Rational& c);

  // Valuation: smallest exponent with nonzero coefficient.  Throws
  // TruncationError if the series is zero through its whole window (a zero
  // tail cannot be distinguished from small valuation).
  int valuation() const;
  bool windowIsZero() const;  // all known coefficients vanish

  LaurentSeries operator-() const;
  LaurentSeries operator+(const LaurentSeries& other) const;
  LaurentSeries operator-(const LaurentSeries& other) const;
  LaurentSeries operator*(const LaurentSeries& other) const;
  LaurentSeries& operator+=(const LaurentSeries& o) { return *this = *this + o; }
  LaurentSeries& operator-=(const LaurentSeries& o) { return *this = *this - o; }
  LaurentSeries& operator*=(const LaurentSeries& o) { return *this = *this * o; }
  LaurentSeries operator*(const Rational& scalar) const;
  LaurentSeries operator/(const Rational& scalar) const;

  // Multiplication by u^k (exact; shifts the window).
  LaurentSeries shifted(int k) const;
  // Restrict the window to exponents < newOrder (must not exceed order()).
  LaurentSeries truncated(int newOrder) const;
  // 1/this.  Needs a nonzero coefficient in the window.
  LaurentSeries inverse() const;
  // Integer power (negative allowed via inverse()).
  LaurentSeries power(int exponent) const;
  // d/du.
  LaurentSeries derivative() const;
  // Term-wise antiderivative; throws MathError if a u^{-1} term is present.
  LaurentSeries primitive() const;

  // Drop leading exactly-zero coefficients from the stored window.
  LaurentSeries stripped() const;

  // residue = coefficient of u^{-1} (requires order() > -1).
  Rational residue() const { return coeff(-1); }

  bool sameWindowEquals(const LaurentSeries& other) const;
  std::string str(const std::string& var = "u") const;

private:
  void check(int exponent) const;
  ExpansionPoint point_;
  int lo_ = 0;
  int order_ = 0;  // exponents < order_ are known
  std::vector<Rational> c_;  // c_[e - lo_] = coefficient of u^e
};

inline LaurentSeries operator*(const Rational& s, const LaurentSeries& f) {
  return f * s;
}

// --- series transcendentals (all exact, on the coefficient window) ---------

// log(1 + f) for f with valuation >= 1.
LaurentSeries log1pSeries(const LaurentSeries& f);
// exp(f) for f with valuation >= 1.
LaurentSeries expSeries(const LaurentSeries& f);
// sqrt(f) for f = 1 + (valuation >= 1 tail); branch with value 1.
LaurentSeries sqrtUnitSeries(const LaurentSeries& f);
// Compositional inverse of f = u + O(u^2) (valuation exactly 1, unit slope
// not required: leading coefficient may be any nonzero rational).
LaurentSeries reversion(const LaurentSeries& f);
// f(g(u)) for g with valuation >= 1; f need only be known for exponents >= 0.
LaurentSeries composeSeries(const LaurentSeries& f, const LaurentSeries& g);

}  // namespace trec
