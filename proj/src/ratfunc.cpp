#include "trec/ratfunc.hpp"

#include <algorithm>

namespace trec {

namespace {

// Poly composed with a rational function, by Horner.
RatFunc composePoly(const Poly& p, const RatFunc& inner) {
  RatFunc result;
  for (int k = p.degree(); k >= 0; --k) {
    result = result * inner + RatFunc(p.coeff(k));
  }
  return result;
}

std::vector<mpz_class> divisorsOf(mpz_class n) {
  n = abs(n);
  if (n == 0) throw MathError("divisorsOf: zero");
  // Trial-division factorization; inputs here are coefficients of small curve
  // and test polynomials, so a modest bound is ample.
  std::vector<std::pair<mpz_class, int>> factors;
  mpz_class m = n;
  for (mpz_class p = 2; p * p <= m && p < 1000000; p += (p == 2 ? 1 : 2)) {
    if (m % p == 0) {
      int e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      factors.emplace_back(p, e);
    }
  }
  if (m > 1) {
    if (m > mpz_class("1000000000000"))
      throw MathError("divisorsOf: coefficient too large to factor");
    factors.emplace_back(m, 1);
  }
  std::vector<mpz_class> divisors{1};
  for (const auto& [p, e] : factors) {
    size_t base = divisors.size();
    mpz_class pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (size_t j = 0; j < base; ++j) divisors.push_back(divisors[j] * pk);
    }
  }
  return divisors;
}

LaurentSeries relabel(const LaurentSeries& s, const ExpansionPoint& pt) {
  LaurentSeries out = LaurentSeries::zero(pt, s.order());
  for (int e = s.lowest(); e < s.order(); ++e) {
    Rational c = s.coeff(e);
    if (c != 0) out.setCoeff(e, c);
  }
  return out;
}

}  // namespace

RationalRoots rationalRoots(const Poly& p) {
  RationalRoots result;
  if (p.isZero()) throw MathError("rationalRoots: zero polynomial");
  Poly q = p;
  // Factor out powers of z.
  int zeroMult = 0;
  while (!q.isZero() && q.coeff(0) == 0) {
    q = q.divmod(Poly::x()).first;
    ++zeroMult;
  }
  if (zeroMult > 0) result.roots.emplace_back(Rational(0), zeroMult);
  if (q.degree() < 1) return result;
  // Clear denominators to get integer coefficients.
  mpz_class lcm = 1;
  for (const auto& c : q.coeffs()) {
    mpz_class den = c.get_den();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
    lcm = lcm / g * den;
  }
  Poly qi = q * Rational(lcm);
  mpz_class a0 = qi.coeff(0).get_num();
  mpz_class an = qi.leading().get_num();
  std::vector<Rational> candidates;
  for (const auto& p1 : divisorsOf(a0))
    for (const auto& q1 : divisorsOf(an)) {
      Rational r(p1, q1);
      r.canonicalize();
      candidates.push_back(r);
      candidates.push_back(-r);
    }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (const auto& r : candidates) {
    int mult = 0;
    while (q.degree() >= 1 && q.eval(r) == 0) {
      q = q.divmod(Poly{-r, Rational(1)}).first;
      ++mult;
    }
    if (mult > 0) result.roots.emplace_back(r, mult);
  }
  result.complete = q.degree() < 1;
  return result;
}

RatFunc::RatFunc(const Rational& constant) : num_(constant), den_(Rational(1)) {}

RatFunc::RatFunc(const Poly& p) : num_(p), den_(Rational(1)) {}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.isZero()) throw MathError("RatFunc: zero denominator");
  normalize();
}

void RatFunc::normalize() {
  if (num_.isZero()) {
    den_ = Poly(Rational(1));
    return;
  }
  Poly g = Poly::gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = num_.divmod(g).first;
    den_ = den_.divmod(g).first;
  }
  Rational lead = den_.leading();
  if (lead != 1) {
    num_ = num_ / lead;
    den_ = den_ / lead;
  }
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc RatFunc::operator+(const RatFunc& other) const {
  return RatFunc(num_ * other.den_ + other.num_ * den_, den_ * other.den_);
}

RatFunc RatFunc::operator-(const RatFunc& other) const { return *this + (-other); }

RatFunc RatFunc::operator*(const RatFunc& other) const {
  return RatFunc(num_ * other.num_, den_ * other.den_);
}

RatFunc RatFunc::operator/(const RatFunc& other) const {
  if (other.isZero()) throw MathError("RatFunc: division by zero");
  return RatFunc(num_ * other.den_, den_ * other.num_);
}

bool RatFunc::operator==(const RatFunc& other) const {
  return num_ == other.num_ && den_ == other.den_;
}

RatFunc RatFunc::derivative() const {
  return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RatFunc RatFunc::pow(int exponent) const {
  if (exponent < 0) {
    if (isZero()) throw MathError("RatFunc::pow: negative power of zero");
    return RatFunc(den_, num_).pow(-exponent);
  }
  RatFunc result = RatFunc(Rational(1));
  RatFunc base = *this;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

Rational RatFunc::eval(const Rational& point) const {
  Rational d = den_.eval(point);
  if (d == 0) throw MathError("RatFunc::eval: pole at " + ratString(point));
  return num_.eval(point) / d;
}

RatFunc RatFunc::compose(const RatFunc& inner) const {
  RatFunc n = composePoly(num_, inner);
  RatFunc d = composePoly(den_, inner);
  if (d.isZero()) throw MathError("RatFunc::compose: denominator vanishes identically");
  return n / d;
}

LaurentSeries RatFunc::expandAt(const ExpansionPoint& pt, int order) const {
  if (pt.atInfinity) {
    int shift = den_.degree() - num_.degree();
    if (isZero()) return LaurentSeries::zero(pt, order);
    RatFunc rev(num_.reversed(), den_.reversed());
    LaurentSeries s = rev.expandAt(ExpansionPoint::finite(0), order - shift);
    return relabel(s.shifted(shift), pt);
  }
  if (isZero()) return LaurentSeries::zero(pt, order);
  Poly nShift = num_.shifted(pt.value);
  Poly dShift = den_.shifted(pt.value);
  int vDen = 0;
  while (dShift.coeff(vDen) == 0) ++vDen;
  int vNum = 0;
  while (nShift.coeff(vNum) == 0) ++vNum;
  // Everything in the requested window vanishes when the valuation exceeds it.
  if (vNum - vDen > order) return LaurentSeries::zero(pt, order);
  int window = order + vDen + 2;
  LaurentSeries numSeries = LaurentSeries::zero(pt, window);
  for (int k = 0; k <= nShift.degree() && k < window; ++k) {
    if (nShift.coeff(k) != 0) numSeries.setCoeff(k, nShift.coeff(k));
  }
  LaurentSeries denUnit = LaurentSeries::zero(pt, window);
  for (int k = vDen; k <= dShift.degree() && k - vDen < window; ++k) {
    if (dShift.coeff(k) != 0) denUnit.setCoeff(k - vDen, dShift.coeff(k));
  }
  if (dShift.coeff(vDen) != 0 && denUnit.windowIsZero())
    throw MathError("RatFunc::expandAt: internal window error");
  LaurentSeries inv = denUnit.inverse();
  LaurentSeries res = (numSeries * inv).shifted(-vDen);
  if (res.order() < order)
    throw MathError("RatFunc::expandAt: internal order shortfall");
  return res.truncated(order);
}

int RatFunc::valuationAt(const ExpansionPoint& pt) const {
  if (isZero()) throw MathError("RatFunc::valuationAt: zero function");
  int bound = num_.degree() + den_.degree() + 2;
  return expandAt(pt, bound).valuation();
}

Rational RatFunc::residueAt(const ExpansionPoint& pt) const {
  if (isZero()) return 0;
  if (pt.atInfinity) {
    // z = 1/w, dz = -dw/w^2: Res_inf f dz = -[w^1] f(1/w).
    LaurentSeries s = expandAt(pt, 2);
    return -s.coeff(1);
  }
  return expandAt(pt, 0).coeff(-1);
}

std::vector<std::pair<Rational, int>> RatFunc::poles() const {
  if (isZero()) return {};
  RationalRoots roots = rationalRoots(den_);
  if (!roots.complete)
    throw MathError("RatFunc::poles: denominator has non-rational roots");
  return roots.roots;
}

std::string RatFunc::str() const {
  if (den_ == Poly(Rational(1))) return num_.str();
  return "(" + num_.str() + ") / (" + den_.str() + ")";
}

}  // namespace trec
