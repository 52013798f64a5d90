#include "trec/laurent.hpp"

#include <algorithm>
#include <sstream>

namespace trec {

LaurentSeries LaurentSeries::zero(ExpansionPoint pt, int order) {
  LaurentSeries s;
  s.point_ = pt;
  s.lo_ = order;
  s.order_ = order;
  return s;
}

LaurentSeries LaurentSeries::monomial(ExpansionPoint pt, int exponent,
                                      const Rational& c, int order) {
  if (exponent >= order)
    throw MathError("LaurentSeries::monomial: exponent beyond order");
  LaurentSeries s = zero(pt, order);
  s.setCoeff(exponent, c);
  return s;
}

LaurentSeries LaurentSeries::constant(ExpansionPoint pt, const Rational& c,
                                      int order) {
  return monomial(pt, 0, c, order);
}

void LaurentSeries::check(int exponent) const {
  if (exponent >= order_)
    throw TruncationError("LaurentSeries: coefficient of exponent " +
                          std::to_string(exponent) + " requested, known only below " +
                          std::to_string(order_));
}

Rational LaurentSeries::coeff(int exponent) const {
  check(exponent);
  if (exponent < lo_) return 0;
  return c_[exponent - lo_];
}

void LaurentSeries::setCoeff(int exponent, const Rational& c) {
  check(exponent);
  if (exponent < lo_) {
    c_.insert(c_.begin(), lo_ - exponent, Rational(0));
    lo_ = exponent;
  }
  c_[exponent - lo_] = c;
}

void LaurentSeries::addCoeff(int exponent, const Rational& c) {
  setCoeff(exponent, coeff(exponent) + c);
}

bool LaurentSeries::windowIsZero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& x) { return x == 0; });
}

int LaurentSeries::valuation() const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) return lo_ + static_cast<int>(i);
  throw TruncationError("LaurentSeries::valuation: series is zero through its window");
}

LaurentSeries LaurentSeries::stripped() const {
  LaurentSeries s = *this;
  size_t drop = 0;
  while (drop < s.c_.size() && s.c_[drop] == 0) ++drop;
  s.c_.erase(s.c_.begin(), s.c_.begin() + drop);
  s.lo_ += static_cast<int>(drop);
  if (s.c_.empty()) s.lo_ = s.order_;
  return s;
}

LaurentSeries LaurentSeries::operator-() const {
  LaurentSeries s = *this;
  for (auto& x : s.c_) x = -x;
  return s;
}

LaurentSeries LaurentSeries::operator+(const LaurentSeries& other) const {
  if (point_ != other.point_)
    throw MathError("LaurentSeries: adding series at different points");
  int order = std::min(order_, other.order_);
  int lo = std::min(std::min(lo_, other.lo_), order);
  LaurentSeries s = zero(point_, order);
  s.lo_ = lo;
  s.c_.assign(order - lo, Rational(0));
  for (int e = lo_; e < std::min(order_, order); ++e) s.c_[e - lo] += coeff(e);
  for (int e = other.lo_; e < std::min(other.order_, order); ++e)
    s.c_[e - lo] += other.coeff(e);
  return s;
}

LaurentSeries LaurentSeries::operator-(const LaurentSeries& other) const {
  return *this + (-other);
}

LaurentSeries LaurentSeries::operator*(const LaurentSeries& other) const {
  if (point_ != other.point_)
    throw MathError("LaurentSeries: multiplying series at different points");
  LaurentSeries a = stripped();
  LaurentSeries b = other.stripped();
  // A term u^{order_a} unknown in a meets b's lowest term at u^{order_a+lo_b}.
  int order = std::min(a.order_ + b.lo_, b.order_ + a.lo_);
  LaurentSeries s = zero(point_, order);
  if (a.c_.empty() || b.c_.empty()) return s;
  s.lo_ = std::min(a.lo_ + b.lo_, order);
  s.c_.assign(order - s.lo_, Rational(0));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    int ea = a.lo_ + static_cast<int>(i);
    for (size_t j = 0; j < b.c_.size(); ++j) {
      int e = ea + b.lo_ + static_cast<int>(j);
      if (e >= order) break;
      s.c_[e - s.lo_] += a.c_[i] * b.c_[j];
    }
  }
  return s;
}

LaurentSeries LaurentSeries::operator*(const Rational& scalar) const {
  LaurentSeries s = *this;
  for (auto& x : s.c_) x *= scalar;
  return s;
}

LaurentSeries LaurentSeries::operator/(const Rational& scalar) const {
  if (scalar == 0) throw MathError("LaurentSeries: division by zero scalar");
  return *this * (Rational(1) / scalar);
}

LaurentSeries LaurentSeries::shifted(int k) const {
  LaurentSeries s = *this;
  s.lo_ += k;
  s.order_ += k;
  return s;
}

LaurentSeries LaurentSeries::truncated(int newOrder) const {
  if (newOrder > order_)
    throw MathError("LaurentSeries::truncated: cannot extend knowledge window");
  LaurentSeries s = *this;
  s.order_ = newOrder;
  if (s.lo_ > newOrder) {
    s.lo_ = newOrder;
    s.c_.clear();
  } else {
    s.c_.resize(newOrder - s.lo_);
  }
  return s;
}

LaurentSeries LaurentSeries::inverse() const {
  LaurentSeries a = stripped();
  if (a.c_.empty())
    throw TruncationError("LaurentSeries::inverse: series is zero through its window");
  int v = a.lo_;
  int len = a.order_ - v;  // known unit-part coefficients
  std::vector<Rational> f(a.c_);
  f.resize(len, Rational(0));
  std::vector<Rational> g(len, Rational(0));
  g[0] = Rational(1) / f[0];
  for (int k = 1; k < len; ++k) {
    Rational acc = 0;
    for (int j = 1; j <= k; ++j) acc += f[j] * g[k - j];
    g[k] = -acc * g[0];
  }
  LaurentSeries s = zero(point_, a.order_ - 2 * v);
  s.lo_ = -v;
  s.c_ = std::move(g);
  return s;
}

LaurentSeries LaurentSeries::power(int exponent) const {
  if (exponent < 0) return inverse().power(-exponent);
  LaurentSeries result = constant(point_, 1, order_);
  LaurentSeries base = *this;
  int e = exponent;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

LaurentSeries LaurentSeries::derivative() const {
  LaurentSeries s = zero(point_, order_ - 1);
  s.lo_ = lo_ - 1;
  s.c_.assign(s.order_ - s.lo_, Rational(0));
  for (int e = lo_; e < order_; ++e) {
    if (e == 0) continue;
    Rational c = c_[e - lo_];
    if (c != 0) s.c_[e - 1 - s.lo_] = c * e;
  }
  return s;
}

LaurentSeries LaurentSeries::primitive() const {
  if (lo_ <= -1 && order_ > -1 && coeff(-1) != 0)
    throw MathError("LaurentSeries::primitive: residue term present");
  LaurentSeries s = zero(point_, order_ + 1);
  s.lo_ = lo_ + 1;
  s.c_.assign(s.order_ - s.lo_, Rational(0));
  for (int e = lo_; e < order_; ++e) {
    if (e == -1) continue;
    Rational c = c_[e - lo_];
    if (c != 0) s.c_[e + 1 - s.lo_] = c / (e + 1);
  }
  return s;
}

bool LaurentSeries::sameWindowEquals(const LaurentSeries& other) const {
  if (point_ != other.point_) return false;
  int order = std::min(order_, other.order_);
  int lo = std::min(lo_, other.lo_);
  for (int e = std::min(lo, order); e < order; ++e)
    if (coeff(e) != other.coeff(e)) return false;
  return true;
}

std::string LaurentSeries::str(const std::string& var) const {
  std::ostringstream out;
  bool first = true;
  for (int e = lo_; e < order_; ++e) {
    Rational c = coeff(e);
    if (c == 0) continue;
    if (!first) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << "-";
    first = false;
    out << ratString(abs(c));
    if (e != 0) out << "*" << var << "^" << e;
  }
  if (first) out << "0";
  out << " + O(" << var << "^" << order_ << ")";
  return out.str();
}

// ---------------------------------------------------------------------------

namespace {
// True once every remaining term of `power` lies at or beyond `order`, so it
// can no longer touch a window truncated there.
bool exhausted(const LaurentSeries& power, int order) {
  LaurentSeries s = power.stripped();
  return s.windowIsZero() || s.lowest() >= order;
}
}  // namespace

LaurentSeries log1pSeries(const LaurentSeries& f) {
  LaurentSeries t = f.stripped();
  if (!t.windowIsZero() && t.valuation() < 1)
    throw MathError("log1pSeries: argument must have positive valuation");
  int order = f.order();
  LaurentSeries acc = LaurentSeries::zero(f.point(), order);
  LaurentSeries power = t;
  long m = 1;
  while (!exhausted(power, order)) {
    acc += power * (m % 2 == 1 ? Rational(1, m) : Rational(-1, m));
    power = (power * t).truncated(std::min((power * t).order(), order));
    ++m;
  }
  return acc;
}

LaurentSeries expSeries(const LaurentSeries& f) {
  LaurentSeries t = f.stripped();
  if (!t.windowIsZero() && t.valuation() < 1)
    throw MathError("expSeries: argument must have positive valuation");
  int order = f.order();
  LaurentSeries acc = LaurentSeries::constant(f.point(), 1, order);
  LaurentSeries power = t;
  Rational invFact = 1;
  long m = 1;
  while (!exhausted(power, order)) {
    invFact /= m;
    acc += power * invFact;
    power = (power * t).truncated(std::min((power * t).order(), order));
    ++m;
  }
  return acc;
}

LaurentSeries sqrtUnitSeries(const LaurentSeries& f) {
  if (f.lowest() > 0 || f.coeff(0) != 1)
    throw MathError("sqrtUnitSeries: argument must be 1 + O(u)");
  for (int e = f.lowest(); e < 0; ++e)
    if (f.coeff(e) != 0) throw MathError("sqrtUnitSeries: negative exponents present");
  int order = f.order();
  std::vector<Rational> g(order, Rational(0));
  g[0] = 1;
  for (int k = 1; k < order; ++k) {
    Rational acc = f.coeff(k);
    for (int j = 1; j < k; ++j) acc -= g[j] * g[k - j];
    g[k] = acc / 2;
  }
  LaurentSeries s = LaurentSeries::zero(f.point(), order);
  for (int k = 0; k < order; ++k) s.setCoeff(k, g[k]);
  return s;
}

LaurentSeries composeSeries(const LaurentSeries& f, const LaurentSeries& g) {
  LaurentSeries inner = g.stripped();
  for (int e = f.lowest(); e < 0 && e < f.order(); ++e)
    if (f.coeff(e) != 0)
      throw MathError("composeSeries: outer series has negative exponents");
  int v = 1;
  if (!inner.windowIsZero()) {
    v = inner.valuation();
    if (v < 1) throw MathError("composeSeries: inner series needs valuation >= 1");
  }
  long long fOrder = f.order();
  long long bound = static_cast<long long>(v) * fOrder;
  int order = static_cast<int>(std::min<long long>(g.order(), bound));
  LaurentSeries acc = LaurentSeries::zero(g.point(), order);
  LaurentSeries gTrunc = inner.truncated(std::min(order, inner.order()));
  // Horner from the top known coefficient down.
  for (int e = f.order() - 1; e >= 0; --e) {
    acc = acc * gTrunc + LaurentSeries::constant(g.point(), f.coeff(e), order);
  }
  return acc;
}

LaurentSeries reversion(const LaurentSeries& f) {
  LaurentSeries t = f.stripped();
  if (t.windowIsZero() || t.valuation() != 1)
    throw MathError("reversion: series must have valuation exactly 1");
  int order = f.order();
  Rational a1 = f.coeff(1);
  // g(w) with f(g(w)) = w, built coefficient by coefficient.
  LaurentSeries g = LaurentSeries::zero(f.point(), order);
  g.setCoeff(1, Rational(1) / a1);
  for (int k = 2; k < order; ++k) {
    LaurentSeries fg = composeSeries(f, g);
    Rational err = fg.coeff(k);
    g.setCoeff(k, -err / a1);
  }
  return g;
}

}  // namespace trec
