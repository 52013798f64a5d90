#include <map>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "trec/invariants.hpp"
#include "trec/verifiers.hpp"

using namespace trec;

namespace {

// Shared instances so the engine's correlator cache is reused across cases.
P1Invariants& thetaInv() {
  static P1Invariants inv(Flavor::Theta);
  return inv;
}
P1Invariants& usualInv() {
  static P1Invariants inv(Flavor::Usual);
  return inv;
}

YPolynomial mono(int k, const Rational& c) {
  return YPolynomial({{k, c}});
}

// 1/(4 - (2m-1)^2 h^2): the partial-fraction building block of G_d.
RatFunc pf(int m) {
  RatFunc h = RatFunc::x();
  long s = (2 * m - 1) * (2 * m - 1);
  return RatFunc(1) / (RatFunc(4) - RatFunc(Rational(s)) * h * h);
}

}  // namespace

TEST_SUITE("verifiers") {

TEST_CASE("action of the ladder operators on odd powers of y") {
  for (int k = 1; k <= 9; k += 2) {
    YPolynomial yk = mono(k, 1);
    CHECK(yk.applyD() == mono(k, rat(4 * (1 - k))));
    YPolynomial want({{k, rat(static_cast<long>(1 - k) * (k - 2) * (k - 2))},
                      {k + 2, rat(-4L * k * k * (k - 2))}});
    CHECK(yk.applyE() == want);
  }
}

TEST_CASE("one-point ladder reproduces the closed y-polynomial table") {
  auto w = onePointLadder(5);
  REQUIRE(w.size() == 6);
  CHECK(w[0] == mono(1, -1));
  CHECK(w[1] == mono(3, rat(1, 2)));
  CHECK(w[2] == YPolynomial({{3, rat(1, 8)}, {5, rat(9, 8)}}));
  CHECK(w[3] ==
        YPolynomial({{3, rat(1, 32)}, {5, rat(45, 16)}, {7, rat(225, 16)}}));
  CHECK(w[4] == YPolynomial({{3, rat(1, 128)},
                             {5, rat(819, 128)},
                             {7, rat(15750, 128)},
                             {9, rat(55125, 128)}}));
  CHECK(w[5] == YPolynomial({{3, rat(1, 512)},
                             {5, rat(1845, 128)},
                             {7, rat(108675, 128)},
                             {9, rat(1157625, 128)},
                             {11, rat(6251175, 256)}}));
  // The ladder relation itself, one rung beyond the table.
  auto w6 = onePointLadder(6);
  CHECK(w6[6].applyD() == w6[5].applyE());
  CHECK(w6[6].coeff(1) == 0);
}

TEST_CASE("recursion one-point series equals the ODE ladder") {
  auto w = onePointLadder(4);
  for (int g = 0; g <= 4; ++g)
    CHECK(onePointFromRecursion(thetaInv(), g) == w[g]);
}

TEST_CASE("degree-indexed series: seeds and partial fractions") {
  auto G = onePointDegreeSeries(4);
  RatFunc h = RatFunc::x();
  RatFunc hm2 = RatFunc(-1) / (h * h);
  CHECK(G[0] == hm2);
  CHECK(G[1] == hm2 + pf(1));
  CHECK(G[2] == (hm2 + RatFunc(rat(13, 8)) * pf(1) + RatFunc(rat(3, 8)) * pf(2)) /
                    RatFunc(4));
  CHECK(G[3] == (hm2 + RatFunc(rat(135, 64)) * pf(1) +
                 RatFunc(rat(99, 128)) * pf(2) + RatFunc(rat(15, 128)) * pf(3)) /
                    RatFunc(36));
  CHECK(G[4] == (hm2 + RatFunc(rat(2577, 1024)) * pf(1) +
                 RatFunc(rat(1179, 1024)) * pf(2) +
                 RatFunc(rat(305, 1024)) * pf(3) +
                 RatFunc(rat(35, 1024)) * pf(4)) /
                    RatFunc(576));
}

TEST_CASE("degree-indexed series: pole locations and orders") {
  auto G = onePointDegreeSeries(6);
  for (int d = 0; d <= 6; ++d) {
    std::map<Rational, int> got;
    for (const auto& [loc, ord] : G[d].poles()) got[loc] = ord;
    std::map<Rational, int> want;
    want[Rational(0)] = 2;  // the h^{-2} leading term
    for (int m = 1; m <= d; ++m) {
      want[rat(2, 2 * m - 1)] = 1;
      want[rat(-2, 2 * m - 1)] = 1;
    }
    CHECK(got == want);
  }
}

TEST_CASE("triangle: ladder x-expansion, degree series, invariants") {
  auto w = onePointLadder(3);
  auto G = onePointDegreeSeries(4);
  for (int g = 1; g <= 3; ++g) {
    auto xc = w[g].xCoefficients(4);
    CHECK(xc[0] == 0);  // no x^{-1} tail in any stable series
    for (int d = 1; d <= 4; ++d) {
      Rational sn = thetaInv().stationary(g, {2 * d - 1});
      CHECK(xc[d] == Rational(factorial(2 * d) * sn));
      CHECK(G[d].expandAt(ExpansionPoint::finite(0), 7).coeff(2 * g - 2) == sn);
    }
  }
  // Genus 0 lives only in the degree series: G_d has h^{-2} coefficient
  // -1/d!^2.
  for (int d = 1; d <= 4; ++d)
    CHECK(G[d].expandAt(ExpansionPoint::finite(0), 1).coeff(-2) ==
          Rational(Rational(-1) / factorial(d) / factorial(d)));
}

TEST_CASE("usual-flavor one-point series matches the recursion") {
  for (int d = 1; d <= 3; ++d) {
    LaurentSeries s = usualOnePointSeries(d, 7);
    CHECK(s.coeff(-2) == Rational(Rational(1) / factorial(d) / factorial(d)));
    for (int g = 0; g <= 4; ++g)
      CHECK(s.coeff(2 * g - 2) ==
            usualInv().stationary(g, {2 * g - 2 + 2 * d}));
  }
}

TEST_CASE("theta two-point degree-one series") {
  RatFunc h1 = thetaTwoPointDegreeOne();
  RatFunc h = RatFunc::x();
  CHECK(h1 == RatFunc(1) / (h * h) + pf(1));
  LaurentSeries s = h1.expandAt(ExpansionPoint::finite(0), 11);
  for (int g = 0; g <= 6; ++g) {
    CHECK(s.coeff(2 * g - 2) == ratPow(rat(1, 4), g));
    if (g <= 4)
      CHECK(s.coeff(2 * g - 2) == thetaInv().stationary(g, {0, 0}));
  }
}

TEST_CASE("wave function coefficients from the quantum curve") {
  auto psi = waveFromQuantumCurve(3);
  REQUIRE(psi.size() == 4);
  CHECK(psi[0] == RatFunc(1));
  RatFunc h = RatFunc::x();
  CHECK(psi[1] == RatFunc(2) * (RatFunc(1) - h) / (h * (h - RatFunc(2))));
  LaurentSeries s = psi[1].expandAt(ExpansionPoint::finite(0), 3);
  CHECK(s.coeff(-1) == -1);
  CHECK(s.coeff(0) == rat(1, 2));
  CHECK(s.coeff(1) == rat(1, 4));
  CHECK(s.coeff(2) == rat(1, 8));
  // First coefficient ties the 1-point and 2-point series together:
  // psihat_1 = h G_1 + h^2/2 H_1.
  auto G = onePointDegreeSeries(1);
  CHECK(psi[1] ==
        h * G[1] + h * h * thetaTwoPointDegreeOne() / RatFunc(2));
}

TEST_CASE("wave function: invariants assembly matches the quantum curve") {
  auto psi = waveFromQuantumCurve(2);
  auto wave = waveFromRecursion(thetaInv(), 2, 6);
  for (int d = 1; d <= 2; ++d) {
    LaurentSeries s = psi[d].expandAt(ExpansionPoint::finite(0), 7);
    for (int c = -d; c <= 6; ++c) {
      Rational tr = wave[d].count(c) ? wave[d].at(c) : Rational(0);
      CHECK(tr == s.coeff(c));
    }
  }
}

TEST_CASE("Toda functional equation determines the free energies") {
  auto F = todaFreeEnergies(7);
  REQUIRE(F.size() == 8);
  for (int g = 2; g <= 7; ++g)
    CHECK(F[g] == P1Invariants::thetaFreeEnergy(g));
  CHECK(F[2] == rat(-1, 64));
  CHECK(F[3] == rat(1, 256));
  CHECK(F[4] == rat(-17, 6144));
  CHECK(F[5] == rat(31, 8192));
  CHECK(F[6] == rat(-691, 81920));
  CHECK(F[7] == rat(5461, 196608));
}

TEST_CASE("Toda equation solves stationary invariants degree by degree") {
  auto reps = todaStationaryCheck(thetaInv(), 2);
  std::vector<std::vector<int>> monomials;
  for (const auto& r : reps) monomials.push_back(r.monomial);
  std::vector<std::vector<int>> want = {
      {}, {0, 0}, {1}, {0, 0, 0, 0}, {0, 0, 1}, {0, 2}, {1, 1}, {3}};
  CHECK(monomials == want);
  for (const auto& r : reps) {
    INFO("monomial size ", r.monomial.size(), " detail: ", r.detail);
    CHECK(r.matched);
    CHECK(r.solved == r.engine);
  }
  // The empty-monomial column is the degree-one 2-point series 4^{-g}.
  for (int g = 0; g <= 2; ++g)
    CHECK(reps[0].solved[g] == ratPow(rat(1, 4), g));
}

TEST_CASE("tanh series of the Euler-type characters") {
  CHECK(tanhSeriesMatches(11));
}

}  // TEST_SUITE
