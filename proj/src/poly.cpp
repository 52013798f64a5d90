#include "trec/poly.hpp"

#include <algorithm>
#include <sstream>

namespace trec {

Poly::Poly(const Rational& constant) {
  if (constant != 0) coeffs_.push_back(constant);
}

Poly::Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

Poly::Poly(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { normalize(); }

Poly Poly::x() { return monomial(1); }

Poly Poly::monomial(int degree, const Rational& coeff) {
  if (degree < 0) throw MathError("Poly::monomial: negative degree");
  if (coeff == 0) return Poly();
  std::vector<Rational> c(degree + 1, Rational(0));
  c[degree] = coeff;
  return Poly(std::move(c));
}

void Poly::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Poly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[k];
}

Rational Poly::leading() const {
  if (isZero()) return 0;
  return coeffs_.back();
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Poly Poly::operator+(const Poly& other) const {
  std::vector<Rational> c(std::max(coeffs_.size(), other.coeffs_.size()), Rational(0));
  for (size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
  for (size_t i = 0; i < other.coeffs_.size(); ++i) c[i] += other.coeffs_[i];
  return Poly(std::move(c));
}

Poly Poly::operator-(const Poly& other) const { return *this + (-other); }

Poly Poly::operator*(const Poly& other) const {
  if (isZero() || other.isZero()) return Poly();
  std::vector<Rational> c(coeffs_.size() + other.coeffs_.size() - 1, Rational(0));
  for (size_t i = 0; i < coeffs_.size(); ++i)
    for (size_t j = 0; j < other.coeffs_.size(); ++j)
      c[i + j] += coeffs_[i] * other.coeffs_[j];
  return Poly(std::move(c));
}

Poly Poly::operator*(const Rational& scalar) const {
  Poly r = *this;
  for (auto& c : r.coeffs_) c *= scalar;
  r.normalize();
  return r;
}

Poly Poly::operator/(const Rational& scalar) const {
  if (scalar == 0) throw MathError("Poly: division by zero scalar");
  return *this * (Rational(1) / scalar);
}

std::pair<Poly, Poly> Poly::divmod(const Poly& divisor) const {
  if (divisor.isZero()) throw MathError("Poly::divmod: division by zero polynomial");
  Poly rem = *this;
  std::vector<Rational> quot;
  int dq = degree() - divisor.degree();
  if (dq < 0) return {Poly(), rem};
  quot.assign(dq + 1, Rational(0));
  Rational lead = divisor.leading();
  while (!rem.isZero() && rem.degree() >= divisor.degree()) {
    int k = rem.degree() - divisor.degree();
    Rational q = rem.leading() / lead;
    quot[k] = q;
    rem -= divisor * Poly::monomial(k, q);
  }
  return {Poly(std::move(quot)), rem};
}

Poly Poly::derivative() const {
  if (coeffs_.size() <= 1) return Poly();
  std::vector<Rational> c(coeffs_.size() - 1);
  for (size_t i = 1; i < coeffs_.size(); ++i) c[i - 1] = coeffs_[i] * static_cast<long>(i);
  return Poly(std::move(c));
}

Rational Poly::eval(const Rational& point) const {
  Rational v = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * point + *it;
  return v;
}

Poly Poly::pow(int exponent) const {
  if (exponent < 0) throw MathError("Poly::pow: negative exponent");
  Poly result{Rational(1)};
  Poly base = *this;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

Poly Poly::shifted(const Rational& shift) const {
  // Horner on p with z replaced by (z + shift).
  Poly result;
  Poly zPlus{shift, Rational(1)};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    result = result * zPlus + Poly(*it);
  return result;
}

Poly Poly::reversed() const {
  std::vector<Rational> c(coeffs_.rbegin(), coeffs_.rend());
  return Poly(std::move(c));
}

Poly Poly::gcd(Poly a, Poly b) {
  while (!b.isZero()) {
    Poly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.isZero()) a = a / a.leading();
  return a;
}

std::string Poly::str() const {
  if (isZero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    Rational c = coeffs_[i];
    if (!first) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << "-";
    first = false;
    Rational a = abs(c);
    if (a != 1 || i == 0) out << ratString(a);
    if (i > 0) {
      if (a != 1) out << "*";
      out << "z";
      if (i > 1) out << "^" << i;
    }
  }
  return out.str();
}

}  // namespace trec
