#include "trec/curve.hpp"

#include <algorithm>

namespace trec {

CurveId curveIdFromName(const std::string& name) {
  if (name == "airy") return CurveId::Airy;
  if (name == "bessel") return CurveId::Bessel;
  if (name == "theta-p1") return CurveId::ThetaP1;
  if (name == "gw-p1") return CurveId::GwP1;
  throw MathError("unknown curve '" + name + "'");
}

std::string curveName(CurveId id) {
  switch (id) {
    case CurveId::Airy: return "airy";
    case CurveId::Bessel: return "bessel";
    case CurveId::ThetaP1: return "theta-p1";
    case CurveId::GwP1: return "gw-p1";
  }
  throw MathError("unknown curve id");
}

SpectralCurve::SpectralCurve(CurveId id, std::string name, RatFunc x, bool yIsLog,
                             RatFunc yRat, RatFunc sigma)
    : id_(id),
      name_(std::move(name)),
      x_(std::move(x)),
      xPrime_(x_.derivative()),
      yIsLog_(yIsLog),
      yRat_(std::move(yRat)),
      sigma_(std::move(sigma)) {
  findBranchPoints();
  validate();
}

const RatFunc& SpectralCurve::yRat() const {
  if (yIsLog_) throw MathError("curve " + name_ + ": y is log z, not rational");
  return yRat_;
}

void SpectralCurve::findBranchPoints() {
  RatFunc dx = x_.derivative();
  if (dx.isZero()) throw MathError("curve " + name_ + ": dx vanishes identically");
  RationalRoots roots = rationalRoots(dx.num());
  if (!roots.complete)
    throw MathError("curve " + name_ + ": branch points are not all rational");
  // dx must not vanish at infinity (in w = 1/z, dx = -x'(1/w) w^{-2} dw).
  LaurentSeries dxAtInf = dx.expandAt(ExpansionPoint::infinity(), 3);
  bool dxPolesAtInf = dxAtInf.stripped().windowIsZero() ? false
                                                        : dxAtInf.valuation() <= 2;
  if (!dxPolesAtInf)
    throw MathError("curve " + name_ + ": branch point at infinity unsupported");

  RatFunc xpp = dx.derivative();
  for (const auto& [z0, mult] : roots.roots) {
    if (x_.den().eval(z0) == 0) continue;  // pole of x, not a branch point
    if (mult != 1)
      throw MathError("curve " + name_ + ": non-simple branch point");
    BranchPoint bp;
    bp.z = z0;
    bp.xValue = x_.eval(z0);
    Rational x2 = xpp.eval(z0);
    if (x2 == 0) throw MathError("curve " + name_ + ": degenerate branch point");
    bp.nuSq = 1 / x2;
    branch_.push_back(bp);
  }
  std::sort(branch_.begin(), branch_.end(),
            [](const BranchPoint& a, const BranchPoint& b) { return a.z > b.z; });
  // Classify regular/irregular from the valuation of y - y(sigma): +1 regular,
  // -1 irregular (simple pole of y).
  for (size_t i = 0; i < branch_.size(); ++i) {
    LaurentSeries dy = deltaY(static_cast<int>(i), 3);
    int val = dy.valuation();
    if (val == 1)
      branch_[i].irregular = false;
    else if (val == -1)
      branch_[i].irregular = true;
    else
      throw MathError("curve " + name_ + ": unexpected y behavior at branch point");
  }
}

void SpectralCurve::validate() const {
  if (x_.compose(sigma_) != x_)
    throw MathError("curve " + name_ + ": x is not sigma-invariant");
  if (sigma_.compose(sigma_) != RatFunc::x())
    throw MathError("curve " + name_ + ": sigma is not an involution");
  if (!yIsLog_) {
    // y must not be sigma-invariant (else y - y(sigma) would vanish).
    if (yRat_.compose(sigma_) == yRat_)
      throw MathError("curve " + name_ + ": y is sigma-invariant");
  }
  for (int i = 0; i < branchCount(); ++i) {
    const BranchPoint& bp = branch_[i];
    if (sigma_.eval(bp.z) != bp.z)
      throw MathError("curve " + name_ + ": sigma does not fix branch point");
    // sigma(z) - z has a simple zero at the branch point.
    RatFunc s = sigma_ - RatFunc::x();
    if (s.valuationAt(alpha(i)) != 1)
      throw MathError("curve " + name_ + ": sigma is not a local deck transform");
    // deltaY(alpha) vanishes (regular) or blows up (irregular); both exclude a
    // nonzero constant term, which would signal a branch-cut bookkeeping bug.
    LaurentSeries dy = deltaY(i, 2);
    if (!bp.irregular && dy.coeff(0) != 0)
      throw MathError("curve " + name_ + ": y - y(sigma) has a constant term");
  }
}

LaurentSeries SpectralCurve::deltaY(int i, int order) const {
  ExpansionPoint pt = alpha(i);
  if (yIsLog_) {
    // y = log z:  y(z) - y(sigma(z)) continued through the branch point is
    // log(1 + u/alpha) - log(1 + (sigma(z) - alpha)/alpha); the log(alpha)
    // constants cancel.  (For sigma = 1/z the two terms coincide up to sign.)
    Rational a = branch_[i].z;
    int ord = std::max(order, 2);
    LaurentSeries u = LaurentSeries::monomial(pt, 1, 1 / a, ord);
    LaurentSeries s =
        ((sigma_ - RatFunc(a)) * RatFunc(1 / a)).expandAt(pt, ord);
    return log1pSeries(u) - log1pSeries(s);
  }
  RatFunc dy = yRat_ - yRat_.compose(sigma_);
  return dy.expandAt(pt, order);
}

YdxSeries SpectralCurve::ydx(int i, int order) const {
  ExpansionPoint pt = alpha(i);
  RatFunc xp = x_.derivative();
  YdxSeries out;
  if (!yIsLog_) {
    out.regular = (yRat_ * xp).expandAt(pt, order);
    out.logConst = LaurentSeries::zero(pt, order);
    return out;
  }
  // y dx = log z * x'(z) dz = [log(alpha) + log(1 + u/alpha)] x'(z) dz.
  Rational a = branch_[i].z;
  LaurentSeries u = LaurentSeries::monomial(pt, 1, 1 / a, std::max(order, 2));
  LaurentSeries logPart = log1pSeries(u);
  LaurentSeries xpSeries = xp.expandAt(pt, order);
  out.regular = logPart * xpSeries;
  out.logConst = xpSeries;
  return out;
}

LaurentSeries SpectralCurve::xShifted(int i, int order) const {
  return (x_ - RatFunc(branch_[i].xValue)).expandAt(alpha(i), order);
}

const SpectralCurve& SpectralCurve::get(CurveId id) {
  static const SpectralCurve airy(CurveId::Airy, "airy",
                                  RatFunc(Poly{rat(0), rat(0), rat(1)}), false,
                                  RatFunc(Poly{rat(0), rat(1)}),
                                  RatFunc(Poly{rat(0), rat(-1)}));
  static const SpectralCurve bessel(CurveId::Bessel, "bessel",
                                    RatFunc(Poly{rat(0), rat(0), rat(1)}), false,
                                    RatFunc(Poly(Rational(1)), Poly{rat(0), rat(1)}),
                                    RatFunc(Poly{rat(0), rat(-1)}));
  static const SpectralCurve thetaP1(
      CurveId::ThetaP1, "theta-p1",
      RatFunc(Poly{rat(1), rat(0), rat(1)}, Poly{rat(0), rat(1)}), false,
      RatFunc(Poly{rat(0), rat(1)}, Poly{rat(-1), rat(0), rat(1)}),
      RatFunc(Poly(Rational(1)), Poly{rat(0), rat(1)}));
  static const SpectralCurve gwP1(
      CurveId::GwP1, "gw-p1",
      RatFunc(Poly{rat(1), rat(0), rat(1)}, Poly{rat(0), rat(1)}), true, RatFunc(),
      RatFunc(Poly(Rational(1)), Poly{rat(0), rat(1)}));
  switch (id) {
    case CurveId::Airy: return airy;
    case CurveId::Bessel: return bessel;
    case CurveId::ThetaP1: return thetaP1;
    case CurveId::GwP1: return gwP1;
  }
  throw MathError("unknown curve id");
}

}  // namespace trec
