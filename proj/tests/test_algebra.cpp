#include "doctest.h"

#include "trec/laurent.hpp"
#include "trec/poly.hpp"
#include "trec/ratfunc.hpp"
#include "trec/rational.hpp"

#include "oracles.hpp"

using namespace trec;

TEST_SUITE("algebra") {

TEST_CASE("rational parse and serialize round-trip") {
  CHECK(parseRational("-1/64") == rat(-1, 64));
  CHECK(parseRational("3") == rat(3));
  CHECK(parseRational("6/4") == rat(3, 2));
  CHECK(ratString(rat(-1, 64)) == "-1/64");
  CHECK(ratString(rat(3)) == "3/1");
  CHECK(ratString(parseRational("-6/-4")) == "3/2");
  CHECK_THROWS_AS(parseRational("1/0"), MathError);
  CHECK_THROWS_AS(parseRational("abc"), MathError);
}

TEST_CASE("rational helpers") {
  CHECK(ratPow(rat(2, 3), -2) == rat(9, 4));
  CHECK(factorial(6) == 720);
  CHECK(binomial(10, 3) == 120);
  CHECK(oddDoubleFactorial(3) == 15);       // 5!! = 15
  CHECK(oddDoubleFactorial(0) == 1);        // (-1)!! = 1
  CHECK(oddDoubleFactorial(-1) == -1);      // (-3)!! = -1
  CHECK(harmonic(3) == rat(11, 6));
}

TEST_CASE("bernoulli matches Akiyama-Tanigawa oracle") {
  CHECK(bernoulli(0) == 1);
  CHECK(bernoulli(1) == rat(-1, 2));  // oracle gives +1/2: opposite convention
  CHECK(testoracle::bernoulliAT(1) == rat(1, 2));
  for (long n = 2; n <= 20; ++n) CHECK(bernoulli(n) == testoracle::bernoulliAT(n));
  CHECK(bernoulli(4) == rat(-1, 30));
  CHECK(bernoulli(12) == rat(-691, 2730));
  // Constant-map free energies (1 - 2^{-2g}) B_{2g} / (g(g-1)); g = 2 value.
  CHECK((1 - rat(1, 16)) * bernoulli(4) / 2 == rat(-1, 64));
}

TEST_CASE("poly arithmetic, divmod, gcd, shift") {
  Poly p{rat(-1), rat(0), rat(1)};  // z^2 - 1
  Poly q{rat(-1), rat(1)};          // z - 1
  auto [quot, rem] = p.divmod(q);
  CHECK(rem.isZero());
  CHECK(quot == Poly{rat(1), rat(1)});
  CHECK(Poly::gcd(p, q) == q);
  CHECK(p.eval(rat(3)) == 8);
  CHECK(p.shifted(rat(1)) == Poly{rat(0), rat(2), rat(1)});  // (z+1)^2 - 1
  CHECK(p.derivative() == Poly{rat(0), rat(2)});
  Poly cube = q.pow(3);
  CHECK(cube.coeff(1) == 3);
  auto [q2, r2] = cube.divmod(p);
  CHECK((q2 * p + r2) == cube);
}

TEST_CASE("ratfunc normalization and arithmetic") {
  RatFunc f(Poly{rat(-1), rat(0), rat(1)}, Poly{rat(-2), rat(2)});  // (z^2-1)/(2z-2)
  CHECK(f == RatFunc(Poly{rat(1, 2), rat(1, 2)}));                  // (z+1)/2
  RatFunc g = RatFunc::x() / (RatFunc::x() - RatFunc(1));
  CHECK(g + RatFunc(1) / (RatFunc(1) - RatFunc::x()) == RatFunc(1));
  CHECK(g.derivative() == -RatFunc(1) / ((RatFunc::x() - 1) * (RatFunc::x() - 1)));
  CHECK(g.compose(RatFunc(Poly{rat(0), rat(0), rat(1)})) ==
        RatFunc(Poly{rat(0), rat(0), rat(1)}, Poly{rat(-1), rat(0), rat(1)}));
}

TEST_CASE("geometric series expansion") {
  RatFunc f = RatFunc(1) / (RatFunc(1) - RatFunc::x());
  LaurentSeries s = f.expandAt(ExpansionPoint::finite(0), 8);
  for (int k = 0; k < 8; ++k) CHECK(s.coeff(k) == 1);
  CHECK_THROWS_AS(s.coeff(8), TruncationError);
}

TEST_CASE("laurent expansion at pole and at infinity") {
  // 1/(z^2 - 1) = 1/2 * 1/(z-1) - 1/4 + ... at z = 1
  RatFunc f = RatFunc(1) / RatFunc(Poly{rat(-1), rat(0), rat(1)});
  LaurentSeries s = f.expandAt(ExpansionPoint::finite(1), 2);
  CHECK(s.coeff(-1) == rat(1, 2));
  CHECK(s.coeff(0) == rat(-1, 4));
  CHECK(s.coeff(1) == rat(1, 8));
  // At infinity: 1/(z^2-1) = w^2 + w^4 + ... in w = 1/z.
  LaurentSeries t = f.expandAt(ExpansionPoint::infinity(), 7);
  CHECK(t.coeff(2) == 1);
  CHECK(t.coeff(3) == 0);
  CHECK(t.coeff(4) == 1);
  CHECK(t.coeff(6) == 1);
}

TEST_CASE("residues: partial fractions oracle and sum over all poles") {
  // 1/(z^2-1) = (1/2)/(z-1) - (1/2)/(z+1) by hand.
  RatFunc f = RatFunc(1) / RatFunc(Poly{rat(-1), rat(0), rat(1)});
  CHECK(f.residueAt(ExpansionPoint::finite(1)) == rat(1, 2));
  CHECK(f.residueAt(ExpansionPoint::finite(-1)) == rat(-1, 2));
  CHECK(f.residueAt(ExpansionPoint::infinity()) == 0);

  // A function with a pole at infinity as well.
  RatFunc h = RatFunc(Poly{rat(2), rat(0), rat(0), rat(1)}, Poly{rat(-1), rat(0), rat(1)});
  Rational total = h.residueAt(ExpansionPoint::infinity());
  for (const auto& [pole, mult] : h.poles()) {
    CHECK(mult == 1);
    total += h.residueAt(ExpansionPoint::finite(pole));
  }
  CHECK(total == 0);

  // Higher-order pole: residue of 1/(z-2)^3 + 5/(z-2) at 2 is 5.
  RatFunc p = RatFunc(1) / RatFunc(Poly{rat(-2), rat(1)}).pow(3) +
              RatFunc(5) / RatFunc(Poly{rat(-2), rat(1)});
  CHECK(p.residueAt(ExpansionPoint::finite(2)) == 5);
}

TEST_CASE("central binomial expansion of 1/sqrt(x^2-4) at infinity") {
  // In w = 1/x: 1/sqrt(x^2-4) = w / sqrt(1 - 4 w^2); compare against the
  // frozen odd coefficients 1, 2, 6, 20, ...
  int order = 20;
  LaurentSeries base = LaurentSeries::zero(ExpansionPoint::infinity(), order);
  base.setCoeff(0, 1);
  base.setCoeff(2, -4);
  LaurentSeries y = sqrtUnitSeries(base).inverse().shifted(1);
  const auto& cb = testoracle::centralBinomial();
  for (size_t m = 0; m < cb.size() && static_cast<int>(2 * m + 1) < y.order(); ++m) {
    CHECK(y.coeff(static_cast<int>(2 * m + 1)) == cb[m]);
    if (2 * m + 2 < static_cast<size_t>(y.order()))
      CHECK(y.coeff(static_cast<int>(2 * m + 2)) == 0);
  }
}

TEST_CASE("series transcendentals round-trip") {
  ExpansionPoint origin = ExpansionPoint::finite(0);
  LaurentSeries u = LaurentSeries::monomial(origin, 1, 1, 10);
  LaurentSeries f = u * rat(2) + u * u * rat(3);
  CHECK(expSeries(log1pSeries(f)).sameWindowEquals(
      f + LaurentSeries::constant(origin, 1, 10)));
  LaurentSeries g = sqrtUnitSeries(LaurentSeries::constant(origin, 1, 10) + f);
  CHECK((g * g).sameWindowEquals(LaurentSeries::constant(origin, 1, 10) + f));
}

TEST_CASE("series reversion and composition") {
  ExpansionPoint origin = ExpansionPoint::finite(0);
  // f = u/(1-u) = u + u^2 + ...; inverse is g = u/(1+u) = u - u^2 + u^3 - ...
  int order = 12;
  LaurentSeries f = LaurentSeries::zero(origin, order);
  for (int k = 1; k < order; ++k) f.setCoeff(k, 1);
  LaurentSeries g = reversion(f);
  for (int k = 1; k < order; ++k) CHECK(g.coeff(k) == (k % 2 == 1 ? 1 : -1));
  LaurentSeries fg = composeSeries(f, g);
  CHECK(fg.coeff(1) == 1);
  for (int k = 2; k < fg.order(); ++k) CHECK(fg.coeff(k) == 0);
}

TEST_CASE("laurent inverse handles poles and tracks truncation") {
  ExpansionPoint origin = ExpansionPoint::finite(0);
  // 1/(u^2 (1 - u)) = u^{-2} + u^{-1} + 1 + ...
  LaurentSeries f = LaurentSeries::zero(origin, 8);
  f.setCoeff(2, 1);
  f.setCoeff(3, -1);
  LaurentSeries inv = f.inverse();
  CHECK(inv.coeff(-2) == 1);
  CHECK(inv.coeff(-1) == 1);
  CHECK(inv.coeff(0) == 1);
  CHECK(inv.order() == 4);  // 8 - 2*2
  CHECK_THROWS_AS(inv.coeff(4), TruncationError);
  CHECK((f * inv).coeff(0) == 1);
}

TEST_CASE("laurent derivative and primitive") {
  ExpansionPoint origin = ExpansionPoint::finite(0);
  LaurentSeries f = LaurentSeries::zero(origin, 6);
  f.setCoeff(-2, 3);
  f.setCoeff(1, 5);
  LaurentSeries df = f.derivative();
  CHECK(df.coeff(-3) == -6);
  CHECK(df.coeff(0) == 5);
  CHECK(df.primitive().sameWindowEquals(f - LaurentSeries::zero(origin, 5)));
  LaurentSeries withResidue = LaurentSeries::monomial(origin, -1, 1, 4);
  CHECK_THROWS_AS(withResidue.primitive(), MathError);
}

TEST_CASE("psi intersection oracle reproduces known values") {
  using testoracle::psiIntersection;
  CHECK(psiIntersection(0, {0, 0, 0}) == 1);
  CHECK(psiIntersection(1, {1}) == rat(1, 24));
  CHECK(psiIntersection(0, {1, 0, 0, 0}) == 1);
  CHECK(psiIntersection(0, {2, 0, 0, 0, 0}) == 1);
  CHECK(psiIntersection(0, {1, 1, 0, 0, 0}) == 2);  // (n-3)!/prod d_i!
  CHECK(psiIntersection(1, {0, 2}) == rat(1, 24));
  CHECK(psiIntersection(1, {1, 1}) == rat(1, 24));
  CHECK(psiIntersection(2, {4}) == rat(1, 1152));
  CHECK(psiIntersection(2, {3, 2}) == rat(29, 5760));
  CHECK(psiIntersection(3, {7}) == rat(1, 82944));
  // <tau_{3g-2}>_g = 1/(24^g g!)
  for (long g = 1; g <= 4; ++g)
    CHECK(psiIntersection(g, {3 * g - 2}) ==
          1 / (ratPow(rat(24), g) * factorial(g)));
  // dimension mismatch vanishes
  CHECK(psiIntersection(1, {0, 1}) == 0);
  CHECK(psiIntersection(0, {0, 0, 0, 0}) == 0);
}

}  // TEST_SUITE
