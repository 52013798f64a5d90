#include <map>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "trec/invariants.hpp"

using namespace trec;

TEST_SUITE("invariants") {

TEST_CASE("residue pairing: hand values and the three-residue identity") {
  P1Invariants inv(Flavor::Theta);
  // Values entering every hand-checked extraction below.
  CHECK(inv.pairing({0, 0}, 0) == 1);
  CHECK(inv.pairing({1, 0}, 0) == 1);
  CHECK(inv.pairing({0, 0}, 1) == 1);
  CHECK(inv.pairing({1, 0}, 1) == -1);
  CHECK(inv.pairing({0, 0}, 3) == rat(1, 2));
  CHECK(inv.pairing({1, 0}, 3) == rat(-1, 2));
  CHECK(inv.pairing({0, 1}, 0) == 0);
  CHECK(inv.pairing({1, 1}, 0) == 0);
  CHECK(inv.pairing({0, 1}, 1) == -1);
  CHECK(inv.pairing({1, 1}, 1) == -1);
  CHECK(inv.pairing({0, 1}, 3) == -1);
  CHECK(inv.pairing({1, 1}, 3) == -1);
  // The z = 0 extraction equals the one at z = infinity, and the residues
  // at the two branch points vanish identically.
  for (int br = 0; br <= 1; ++br)
    for (int k = 0; k <= 3; ++k)
      for (int b = 0; b <= 6; ++b) {
        BasisIndex idx{br, k};
        CHECK(inv.pairing(idx, b) == inv.pairingAtInfinity(idx, b));
        CHECK(inv.pairingBranchResidue(idx, b, 0) == 0);
        CHECK(inv.pairingBranchResidue(idx, b, 1) == 0);
      }
}

TEST_CASE("unstable one-point values: residue computation vs closed form") {
  P1Invariants theta(Flavor::Theta);
  for (int d = 1; d <= 5; ++d)
    CHECK(theta.onePointGenusZero(2 * d - 1) == -P1Invariants::aCoeff(d));
  CHECK(theta.onePointGenusZero(0) == 0);
  CHECK(theta.onePointGenusZero(2) == 0);

  P1Invariants usual(Flavor::Usual);
  for (int d = 1; d <= 5; ++d)
    CHECK(usual.onePointGenusZero(2 * d - 2) == P1Invariants::aCoeff(d));
  CHECK(usual.onePointGenusZero(1) == 0);
  CHECK(usual.onePointGenusZero(3) == 0);
}

TEST_CASE("unstable two-point values: divisor-equation column and parity") {
  for (int d = 1; d <= 6; ++d)
    CHECK(P1Invariants::twoPointGenusZero(0, 2 * d - 2) ==
          Rational(d) * P1Invariants::aCoeff(d));
  CHECK(P1Invariants::twoPointGenusZero(1, 1) == rat(1, 2));
  CHECK(P1Invariants::twoPointGenusZero(0, 1) == 0);
  CHECK(P1Invariants::twoPointGenusZero(2, 1) == 0);
  CHECK(P1Invariants::twoPointGenusZero(3, 1) ==
        P1Invariants::twoPointGenusZero(1, 3));
}

TEST_CASE("theta stationary one-point table") {
  P1Invariants inv(Flavor::Theta);
  // Unstable genus 0: -1/d!^2 at b = 2d - 1.
  CHECK(inv.stationary(0, {1}) == -1);
  CHECK(inv.stationary(0, {3}) == rat(-1, 4));
  CHECK(inv.stationary(0, {5}) == rat(-1, 36));
  CHECK(inv.stationary(0, {0}) == 0);
  CHECK(inv.stationary(0, {2}) == 0);
  // Genus 1 at d = 1, 2, 3.
  CHECK(inv.stationary(1, {1}) == rat(1, 4));
  CHECK(inv.stationary(1, {3}) == rat(1, 8));
  CHECK(inv.stationary(1, {5}) == rat(1, 48));
  CHECK(inv.stationary(1, {0}) == 0);
  CHECK(inv.stationary(1, {2}) == 0);
  // Genus 2 at d = 1, 2 and genus 3 at d = 1.
  CHECK(inv.stationary(2, {1}) == rat(1, 16));
  CHECK(inv.stationary(2, {3}) == rat(5, 64));
  CHECK(inv.stationary(3, {1}) == rat(1, 64));
}

TEST_CASE("theta stationary two-point values and the unit insertion") {
  P1Invariants inv(Flavor::Theta);
  // The d = 1 two-point series is hbar^{-2} + 1/(4 - hbar^2).
  CHECK(inv.stationary(0, {0, 0}) == 1);
  CHECK(inv.stationary(1, {0, 0}) == rat(1, 4));
  CHECK(inv.stationary(2, {0, 0}) == rat(1, 16));
  // tau_0(1) insertion acts as the dilaton on the Theta side.
  CHECK(inv.stationaryWithUnit(0, {1}) == 1);
  CHECK(inv.stationaryWithUnit(1, {0, 0}) == 2 * inv.stationary(1, {0, 0}));
  CHECK(inv.stationaryWithUnit(2, {0, 0}) == 4 * inv.stationary(2, {0, 0}));
}

TEST_CASE("theta genus-0 stable invariants vanish") {
  P1Invariants inv(Flavor::Theta);
  CHECK(inv.stationary(0, {1, 1, 1}) == 0);
  CHECK(inv.stationary(0, {3, 1, 1, 1}) == 0);
  CHECK(inv.ancestors(0, 3).empty());
  CHECK(inv.ancestors(0, 4).empty());
}

TEST_CASE("usual stationary anchors") {
  P1Invariants inv(Flavor::Usual);
  // Unstable (0,1) and (0,2).
  CHECK(inv.stationary(0, {0}) == 1);
  CHECK(inv.stationary(0, {2}) == rat(1, 4));
  CHECK(inv.stationary(0, {4}) == rat(1, 36));
  CHECK(inv.stationary(0, {1}) == 0);
  CHECK(inv.stationary(0, {0, 0}) == 1);
  CHECK(inv.stationary(0, {0, 2}) == rat(1, 2));
  CHECK(inv.stationary(0, {0, 4}) == rat(1, 12));
  CHECK(inv.stationary(0, {1, 1}) == rat(1, 2));
  // Genus 1: degree 0 and degree 1.
  CHECK(inv.stationary(1, {0}) == rat(-1, 24));
  CHECK(inv.stationary(1, {2}) == rat(1, 24));
  CHECK(inv.stationary(1, {1}) == 0);
  // Genus-0 stable range: iterated divisor-equation values.
  CHECK(inv.stationary(0, {0, 0, 0}) == 1);
  CHECK(inv.stationary(0, {0, 0, 0, 0}) == 1);
  CHECK(inv.stationary(0, {2, 0, 0, 0}) == 2);
  CHECK(inv.stationary(0, {1, 1, 0, 0}) == 2);
}

TEST_CASE("ancestor coefficients in the t/s coordinates") {
  using Terms = std::map<std::vector<BasisIndex>, Rational>;
  P1Invariants theta(Flavor::Theta);
  // omega_{1,1} = (1/4) t_0.
  CHECK(theta.ancestors(1, 1).terms() == Terms{{{{0, 0}}, rat(1, 4)}});
  // omega_{2,1} = -(1/32) t_0 - (3/32) s_1.
  CHECK(theta.ancestors(2, 1).terms() ==
        Terms{{{{0, 0}}, rat(-1, 32)}, {{{1, 1}}, rat(-3, 32)}});
  P1Invariants usual(Flavor::Usual);
  // omega_{1,1} = -(1/24) s_0 - (1/12) t_1.
  CHECK(usual.ancestors(1, 1).terms() ==
        Terms{{{{0, 1}}, rat(-1, 12)}, {{{1, 0}}, rat(-1, 24)}});
}

TEST_CASE("round trip: stationary values through the t/s coordinates") {
  P1Invariants theta(Flavor::Theta);
  CHECK(theta.stationaryFromAncestors(1, {1}) == rat(1, 4));
  CHECK(theta.stationaryFromAncestors(1, {3}) == rat(1, 8));
  CHECK(theta.stationaryFromAncestors(2, {1}) == rat(1, 16));
  CHECK(theta.stationaryFromAncestors(2, {3}) == rat(5, 64));
  CHECK(theta.stationaryFromAncestors(1, {0, 0}) == theta.stationary(1, {0, 0}));
  CHECK(theta.stationaryFromAncestors(2, {0, 0}) == theta.stationary(2, {0, 0}));
  P1Invariants usual(Flavor::Usual);
  CHECK(usual.stationaryFromAncestors(1, {0}) == usual.stationary(1, {0}));
  CHECK(usual.stationaryFromAncestors(1, {2}) == usual.stationary(1, {2}));
  CHECK(usual.stationaryFromAncestors(0, {0, 0, 0}) == 1);
  CHECK(usual.stationaryFromAncestors(0, {1, 1, 0, 0}) == 2);
}

TEST_CASE("classical two-point S-matrix") {
  using P = P1Invariants;
  SMat s0 = P::sMatrix(0);
  CHECK(s0[0][0] == 1);
  CHECK(s0[0][1] == 0);
  CHECK(s0[1][0] == 0);
  CHECK(s0[1][1] == 1);
  SMat s1 = P::sMatrix(1);
  CHECK(s1[0][0] == -1);
  CHECK(s1[0][1] == 0);
  CHECK(s1[1][0] == 0);
  CHECK(s1[1][1] == 1);
  SMat s2 = P::sMatrix(2);
  CHECK(s2[0][0] == 0);
  CHECK(s2[0][1] == rat(1, 2));
  CHECK(s2[1][0] == -2);
  CHECK(s2[1][1] == 0);
  SMat s3 = P::sMatrix(3);
  CHECK(s3[0][0] == rat(-5, 4));
  CHECK(s3[0][1] == 0);
  CHECK(s3[1][0] == 0);
  CHECK(s3[1][1] == rat(1, 4));
  // The omega-omega column reproduces the regularized two-point extraction.
  for (int d = 2; d <= 6; ++d) {
    Rational want = Rational(d) * P::aCoeff(d);
    CHECK(P::sMatrix(2 * d - 2)[0][1] == want);
    CHECK(P::twoPointGenusZero(0, 2 * d - 2) == want);
  }
  // The t_0 residue functional realizes the same column: the descendant
  // transform is the identity composed with residue weights.
  P1Invariants theta(Flavor::Theta);
  for (int d = 1; d <= 6; ++d) {
    Rational t0 =
        (theta.pairing({0, 0}, 2 * d - 1) - theta.pairing({1, 0}, 2 * d - 1)) /
        2;
    CHECK(t0 == Rational(d) * P::aCoeff(d));
  }
}

TEST_CASE("strata relation evaluates to the genus-2 free energy") {
  P1Invariants usual(Flavor::Usual);
  CHECK(usual.strataRelation() == rat(-1, 64));
  CHECK(usual.strataRelation() == P1Invariants::thetaFreeEnergy(2));
}

TEST_CASE("free energies and Hodge-type integrals in closed form") {
  using P = P1Invariants;
  CHECK(P::thetaFreeEnergy(2) == rat(-1, 64));
  CHECK(P::thetaFreeEnergy(3) == rat(1, 256));
  CHECK(P::thetaFreeEnergy(4) == rat(-17, 6144));
  CHECK(P::thetaFreeEnergy(5) == rat(31, 8192));
  CHECK(P::thetaFreeEnergy(6) == rat(-691, 81920));
  CHECK(P::hodgeTheta(2) == rat(1, 128));
  CHECK(P::hodgeTheta(3) == rat(1, 512));
  CHECK(P::hodgeTheta(4) == rat(17, 12288));
  CHECK(P::hodgeTheta(5) == rat(31, 16384));
  CHECK(P::hodgeTheta(6) == rat(691, 163840));
  CHECK(P::hodgeThetaMarked(1, 1) == rat(1, 8));
  CHECK(P::hodgeThetaMarked(1, 2) == rat(1, 8));
  CHECK(P::hodgeThetaMarked(2, 1) == rat(1, 64));
  CHECK(P::hodgeThetaMarked(2, 1) == 2 * P::hodgeTheta(2));
  // Degree-0 one-point boundary value of the Theta theory.
  CHECK(2 * P::hodgeThetaMarked(1, 1) == rat(1, 4));
  // Engine free energies agree with the Bernoulli closed form.
  P1Invariants theta(Flavor::Theta);
  CHECK(theta.engine().freeEnergy(2) == P::thetaFreeEnergy(2));
  CHECK(theta.engine().freeEnergy(3) == P::thetaFreeEnergy(3));
}

TEST_CASE("psi intersection numbers through the dictionary") {
  Engine airy(CurveId::Airy);
  CHECK(intersectionNumber(airy, 0, {0, 0, 0}) == 1);
  CHECK(intersectionNumber(airy, 0, {1, 0, 0, 0}) == 1);
  CHECK(intersectionNumber(airy, 1, {1}) == rat(1, 24));
  CHECK(intersectionNumber(airy, 2, {4}) == rat(1, 1152));
  // Cross-check a spread against the closed recursion oracle.
  for (auto& ks : std::vector<std::vector<long>>{{0, 2},
                                                 {1, 1},
                                                 {0, 0, 0, 1},
                                                 {2, 2, 1},
                                                 {5, 1, 1},
                                                 {7}}) {
    long total = 0;
    for (long k : ks) total += k;
    long n = static_cast<long>(ks.size());
    // Solve sum = 3g - 3 + n for g; all the tuples above make it integral.
    long g = (total + 3 - n) / 3;
    std::vector<int> ki(ks.begin(), ks.end());
    CHECK(intersectionNumber(airy, static_cast<int>(g), ki) ==
          testoracle::psiIntersection(g, ks));
  }
}

TEST_CASE("Theta-class intersection numbers match the displayed series") {
  Engine bessel(CurveId::Bessel);
  CHECK(intersectionNumber(bessel, 1, {0}) == rat(1, 8));
  CHECK(intersectionNumber(bessel, 1, {0, 0}) == rat(1, 8));
  CHECK(intersectionNumber(bessel, 1, {0, 0, 0}) == rat(1, 4));
  CHECK(intersectionNumber(bessel, 2, {1}) == rat(3, 128));
  CHECK(intersectionNumber(bessel, 2, {0, 1}) == rat(9, 128));
  CHECK(intersectionNumber(bessel, 3, {2}) == rat(15, 1024));
  CHECK(intersectionNumber(bessel, 3, {1, 1}) == rat(63, 512));
  CHECK(intersectionNumber(bessel, 3, {0, 2}) == rat(75, 1024));
}

}  // TEST_SUITE
