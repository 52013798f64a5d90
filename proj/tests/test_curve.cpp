#include "doctest.h"
#include "trec/curve.hpp"

using namespace trec;

TEST_SUITE("curve") {

TEST_CASE("curve names round-trip") {
  for (auto id : {CurveId::Airy, CurveId::Bessel, CurveId::ThetaP1, CurveId::GwP1}) {
    CHECK(curveIdFromName(curveName(id)) == id);
  }
  CHECK(curveName(CurveId::ThetaP1) == "theta-p1");
  CHECK_THROWS_AS(curveIdFromName("weierstrass"), MathError);
}

TEST_CASE("airy curve: one regular branch point at the origin") {
  const auto& c = SpectralCurve::get(CurveId::Airy);
  REQUIRE(c.branchCount() == 1);
  const auto& bp = c.branchPoints()[0];
  CHECK(bp.z == 0);
  CHECK_FALSE(bp.irregular);
  CHECK(bp.xValue == 0);
  CHECK(bp.nuSq == rat(1, 2));  // x = z^2, x'' = 2

  // y - y(sigma) = 2z.
  LaurentSeries dy = c.deltaY(0, 5);
  CHECK(dy.valuation() == 1);
  CHECK(dy.coeff(1) == 2);
  CHECK(dy.coeff(2) == 0);
  CHECK(dy.coeff(3) == 0);

  // y dx = 2z^2 dz.
  YdxSeries w = c.ydx(0, 5);
  CHECK(w.logConst.windowIsZero());
  CHECK(w.regular.coeff(2) == 2);
  CHECK(w.regular.coeff(0) == 0);
  CHECK(w.regular.coeff(1) == 0);
  CHECK(w.regular.coeff(3) == 0);

  LaurentSeries xs = c.xShifted(0, 5);
  CHECK(xs.valuation() == 2);
  CHECK(xs.coeff(2) == 1);
}

TEST_CASE("bessel curve: one irregular branch point at the origin") {
  const auto& c = SpectralCurve::get(CurveId::Bessel);
  REQUIRE(c.branchCount() == 1);
  const auto& bp = c.branchPoints()[0];
  CHECK(bp.z == 0);
  CHECK(bp.irregular);
  CHECK(bp.nuSq == rat(1, 2));

  // y - y(sigma) = 2/z.
  LaurentSeries dy = c.deltaY(0, 4);
  CHECK(dy.valuation() == -1);
  CHECK(dy.coeff(-1) == 2);
  CHECK(dy.coeff(0) == 0);
  CHECK(dy.coeff(1) == 0);

  // y dx = 2 dz.
  YdxSeries w = c.ydx(0, 4);
  CHECK(w.logConst.windowIsZero());
  CHECK(w.regular.coeff(0) == 2);
  CHECK(w.regular.coeff(1) == 0);
  CHECK(w.regular.coeff(2) == 0);
}

TEST_CASE("theta curve: branch points +1, -1, both irregular") {
  const auto& c = SpectralCurve::get(CurveId::ThetaP1);
  REQUIRE(c.branchCount() == 2);
  CHECK(c.branchPoints()[0].z == 1);
  CHECK(c.branchPoints()[1].z == -1);
  CHECK(c.branchPoints()[0].irregular);
  CHECK(c.branchPoints()[1].irregular);
  CHECK(c.branchPoints()[0].xValue == 2);
  CHECK(c.branchPoints()[1].xValue == -2);
  // x = z + 1/z, x'' = 2/z^3.
  CHECK(c.branchPoints()[0].nuSq == rat(1, 2));
  CHECK(c.branchPoints()[1].nuSq == rat(-1, 2));

  // x is invariant under sigma(z) = 1/z.
  CHECK(c.x().compose(c.sigma()) == c.x());

  // y - y(sigma) = 2y = 2z/(z^2-1).
  LaurentSeries dyP = c.deltaY(0, 4);
  CHECK(dyP.valuation() == -1);
  CHECK(dyP.coeff(-1) == 1);
  CHECK(dyP.coeff(0) == rat(1, 2));
  CHECK(dyP.coeff(1) == rat(-1, 4));
  CHECK(dyP.coeff(2) == rat(1, 8));
  LaurentSeries dyM = c.deltaY(1, 4);
  CHECK(dyM.coeff(-1) == 1);
  CHECK(dyM.coeff(0) == rat(-1, 2));
  CHECK(dyM.coeff(1) == rat(-1, 4));
  CHECK(dyM.coeff(2) == rat(-1, 8));

  // y dx = dz/z globally.
  CHECK(c.yRat() * c.xPrime() == RatFunc(Poly(Rational(1)), Poly{rat(0), rat(1)}));
  YdxSeries w = c.ydx(0, 4);
  CHECK(w.logConst.windowIsZero());
  CHECK(w.regular.coeff(0) == 1);
  CHECK(w.regular.coeff(1) == -1);
  CHECK(w.regular.coeff(2) == 1);

  // x - 2 = (z-1)^2/z has a double zero at +1.
  LaurentSeries xs = c.xShifted(0, 5);
  CHECK(xs.valuation() == 2);
  CHECK(xs.coeff(2) == 1);
  CHECK(xs.coeff(3) == -1);
  CHECK(xs.coeff(4) == 1);
}

TEST_CASE("logarithmic curve: branch points +1, -1, both regular") {
  const auto& c = SpectralCurve::get(CurveId::GwP1);
  REQUIRE(c.branchCount() == 2);
  CHECK(c.yIsLog());
  CHECK_THROWS_AS(c.yRat(), MathError);
  CHECK(c.branchPoints()[0].z == 1);
  CHECK(c.branchPoints()[1].z == -1);
  CHECK_FALSE(c.branchPoints()[0].irregular);
  CHECK_FALSE(c.branchPoints()[1].irregular);
  CHECK(c.branchPoints()[0].nuSq == rat(1, 2));
  CHECK(c.branchPoints()[1].nuSq == rat(-1, 2));

  // y - y(sigma) = 2 log z = 2 log(1 + u) at +1, 2 log(1 - u) at -1.
  LaurentSeries dyP = c.deltaY(0, 5);
  CHECK(dyP.valuation() == 1);
  CHECK(dyP.coeff(1) == 2);
  CHECK(dyP.coeff(2) == -1);
  CHECK(dyP.coeff(3) == rat(2, 3));
  CHECK(dyP.coeff(4) == rat(-1, 2));
  LaurentSeries dyM = c.deltaY(1, 5);
  CHECK(dyM.coeff(1) == -2);
  CHECK(dyM.coeff(2) == -1);
  CHECK(dyM.coeff(3) == rat(-2, 3));
  CHECK(dyM.coeff(4) == rat(-1, 2));

  // y dx = [log(alpha) + log(z/alpha)] x'(z) dz with x' = 1 - 1/z^2.
  YdxSeries w = c.ydx(0, 5);
  CHECK(w.logConst.coeff(0) == 0);
  CHECK(w.logConst.coeff(1) == 2);
  CHECK(w.logConst.coeff(2) == -3);
  CHECK(w.logConst.coeff(3) == 4);
  CHECK(w.regular.coeff(0) == 0);
  CHECK(w.regular.coeff(1) == 0);
  CHECK(w.regular.coeff(2) == 2);
  CHECK(w.regular.coeff(3) == -4);
  CHECK(w.regular.coeff(4) == rat(37, 6));
}

}  // TEST_SUITE
