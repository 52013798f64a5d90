#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "trec/rational.hpp"

namespace trec {

// Dense univariate polynomial over Rational.  Coefficient k is the
// coefficient of z^k; the representation is always normalized (no trailing
// zero coefficients), and the zero polynomial has an empty coefficient list
// and degree -1.
class Poly {
public:
  Poly() = default;
  Poly(const Rational& constant);  // NOLINT: implicit constant lift is intended
  Poly(long constant) : Poly(Rational(constant)) {}
  explicit Poly(std::vector<Rational> coeffs);
  Poly(std::initializer_list<Rational> coeffs);

  static Poly x();                                 // the monomial z
  static Poly monomial(int degree, const Rational& coeff = 1);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool isZero() const { return coeffs_.empty(); }
  Rational coeff(int k) const;
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational leading() const;

  Poly operator-() const;
  Poly operator+(const Poly& other) const;
  Poly operator-(const Poly& other) const;
  Poly operator*(const Poly& other) const;
  Poly& operator+=(const Poly& other) { return *this = *this + other; }
  Poly& operator-=(const Poly& other) { return *this = *this - other; }
  Poly& operator*=(const Poly& other) { return *this = *this * other; }
  Poly operator*(const Rational& scalar) const;
  Poly operator/(const Rational& scalar) const;
  bool operator==(const Poly& other) const { return coeffs_ == other.coeffs_; }
  bool operator!=(const Poly& other) const { return !(*this == other); }

  // Quotient and remainder with deg(rem) < deg(divisor).
  std::pair<Poly, Poly> divmod(const Poly& divisor) const;

  Poly derivative() const;
  Rational eval(const Rational& point) const;
  Poly pow(int exponent) const;

  // p(z + shift) as a polynomial in z.
  Poly shifted(const Rational& shift) const;

  // Coefficient list reversed: z^deg * p(1/z).  Used for expansions at
  // infinity.
  Poly reversed() const;

  // Monic gcd (1 for coprime inputs, 0 only if both inputs are 0).
  static Poly gcd(Poly a, Poly b);

  std::string str() const;  // debug form, e.g. "1 - 2*z + z^3"

private:
  void normalize();
  std::vector<Rational> coeffs_;
};

inline Poly operator*(const Rational& scalar, const Poly& p) { return p * scalar; }

}  // namespace trec
