#pragma once

#include <string>
#include <vector>

#include "trec/laurent.hpp"
#include "trec/poly.hpp"

namespace trec {

// Rational function num/den over Rational, kept in lowest terms with a monic
// denominator.  This is the ambient function field of every spectral curve in
// the library, so expansions, residues, and pole data all live here.
class RatFunc {
public:
  RatFunc() = default;                 // zero
  RatFunc(const Rational& constant);   // NOLINT: implicit lift intended
  RatFunc(long constant) : RatFunc(Rational(constant)) {}
  RatFunc(const Poly& p);              // NOLINT: implicit lift intended
  RatFunc(Poly num, Poly den);

  static RatFunc x() { return RatFunc(Poly::x()); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool isZero() const { return num_.isZero(); }

  RatFunc operator-() const;
  RatFunc operator+(const RatFunc& other) const;
  RatFunc operator-(const RatFunc& other) const;
  RatFunc operator*(const RatFunc& other) const;
  RatFunc operator/(const RatFunc& other) const;
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
  bool operator==(const RatFunc& other) const;
  bool operator!=(const RatFunc& other) const { return !(*this == other); }

  RatFunc derivative() const;
  RatFunc pow(int exponent) const;

  // Finite evaluation; throws MathError at a pole.
  Rational eval(const Rational& point) const;

  // this(inner(z)) by Horner over numerator and denominator.
  RatFunc compose(const RatFunc& inner) const;

  // Laurent expansion in the local coordinate at the point (u = z - a, or
  // u = 1/z at infinity), with coefficients known for exponents < order.
  LaurentSeries expandAt(const ExpansionPoint& pt, int order) const;

  // Order of vanishing at the point (negative at a pole).  Throws on zero.
  int valuationAt(const ExpansionPoint& pt) const;

  // Residue of (this dz) at a finite point, or at infinity
  // (Res_inf f dz = -[w^1-coefficient of f(1/w)] ... computed exactly).
  Rational residueAt(const ExpansionPoint& pt) const;

  // All finite poles, or throws MathError if the denominator has an
  // irreducible factor of degree > 1 (pole enumeration needs rational roots).
  // Each pole is listed once with its multiplicity.
  std::vector<std::pair<Rational, int>> poles() const;

  std::string str() const;

private:
  void normalize();
  Poly num_;
  Poly den_{Rational(1)};
};

inline RatFunc operator*(const Rational& s, const RatFunc& f) {
  return RatFunc(Poly(s)) * f;
}

// All rational roots of p (with multiplicity), plus a flag telling whether
// the nonconstant part of p factors completely into rational linear factors.
struct RationalRoots {
  std::vector<std::pair<Rational, int>> roots;
  bool complete = true;
};
RationalRoots rationalRoots(const Poly& p);

}  // namespace trec
