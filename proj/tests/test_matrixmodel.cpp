#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "trec/matrixmodel.hpp"
#include "trec/verifiers.hpp"

using namespace trec;

TEST_SUITE("matrixmodel") {

TEST_CASE("flat-measure moments") {
  CHECK(flatMoment(0) == 4);
  CHECK(flatMoment(2) == rat(16, 3));
  CHECK(flatMoment(4) == rat(64, 5));
  for (int k = 1; k <= 15; k += 2) CHECK(flatMoment(k) == 0);
  for (int k = 0; k <= 14; k += 2)
    CHECK(flatMoment(k) == Rational(Rational(2) * ratPow(2, k + 1) / (k + 1)));
}

TEST_CASE("orthogonal system: orthogonality, parity, norms") {
  OrthoSystem sys = orthoSystem(20);
  REQUIRE(sys.p.size() == 21);
  CHECK(sys.normSq[0] == 4);
  CHECK(sys.normSq[1] == rat(16, 3));
  for (int n = 0; n <= 20; ++n) {
    // Monic of the right degree, with the parity of the measure.
    CHECK(sys.p[n].degree() == n);
    CHECK(sys.p[n].leading() == 1);
    for (int i = 0; i <= n; ++i)
      if ((n - i) % 2 == 1) CHECK(sys.p[n].coeff(i) == 0);
    // Exact orthogonality and the closed-form norm.
    for (int j = 0; j < n; ++j) CHECK(flatInner(sys.p[n], sys.p[j]) == 0);
    CHECK(flatInner(sys.p[n], sys.p[n]) == sys.normSq[n]);
    CHECK(sys.normSq[n] == normSqClosed(n));
  }
}

TEST_CASE("three-term recurrence coefficients match the norm ratios") {
  OrthoSystem sys = orthoSystem(12);
  for (int n = 1; n <= 11; ++n) {
    Rational a = Rational(sys.normSq[n] / sys.normSq[n - 1]);
    CHECK(a == rat(4L * n * n, 4L * n * n - 1));
    // x p_n = p_{n+1} + a_n p_{n-1} termwise (diagonal term absent by
    // parity).
    CHECK(Poly::x() * sys.p[n] == sys.p[n + 1] + sys.p[n - 1] * a);
  }
}

TEST_CASE("partition function is the norm product") {
  CHECK(partitionFunction(0) == 1);
  CHECK(partitionFunction(1) == 4);
  CHECK(partitionFunction(2) == rat(64, 3));
  Rational prod = 1;
  for (int j = 0; j < 8; ++j) prod *= normSqClosed(j);
  CHECK(partitionFunction(8) == prod);
}

TEST_CASE("lattice identities on the perturbed norms") {
  for (int N = 1; N <= 12; ++N) {
    TodaNormReport rep = todaNormIdentity(N);
    INFO("N = ", N, ": ", rep.detail);
    CHECK(rep.flow);
    CHECK(rep.ratioForm);
    CHECK(rep.telescoped);
    CHECK(rep.todaEquation);
  }
}

TEST_CASE("second-kind series: Stieltjes transform and Wronskian") {
  // q_0 = log((x+2)/(x-2)) has the moment expansion sum m_k x^{-k-1}.
  LaurentSeries q0 = secondKindSeries(0, 8);
  CHECK(q0.coeff(1) == 4);
  CHECK(q0.coeff(2) == 0);
  CHECK(q0.coeff(3) == rat(16, 3));
  CHECK(q0.coeff(5) == rat(64, 5));
  CHECK(q0.coeff(7) == rat(256, 7));
  // q_n = O(x^{-n-1}) with leading coefficient the squared norm.
  for (int n = 0; n <= 8; ++n) {
    LaurentSeries q = secondKindSeries(n, n + 4);
    for (int j = 0; j <= n; ++j) CHECK(q.coeff(j) == 0);
    CHECK(q.coeff(n + 1) == normSqClosed(n));
  }
  for (int n = 0; n <= 12; ++n) CHECK(wronskianMatches(n, 20));
}

TEST_CASE("finite-N one-point series: two computations agree") {
  for (int N = 1; N <= 6; ++N) {
    LaurentSeries a = finiteNOnePoint(N, 16);
    LaurentSeries b = finiteNOnePointDirect(N, 16);
    CHECK((a - b).windowIsZero());
    // Odd series in 1/x.
    for (int j = 0; j < 16; j += 2) CHECK(a.coeff(j) == 0);
    // Leading coefficient -N^2 (engine convention).
    CHECK(a.coeff(1) == rat(-1L * N * N));
  }
}

TEST_CASE("finite-N one-point series equals the degree-indexed series") {
  auto G = onePointDegreeSeries(4);
  for (int N = 1; N <= 12; ++N) {
    LaurentSeries w = finiteNOnePoint(N, 11);
    for (int d = 0; d <= 4; ++d)
      CHECK(w.coeff(2 * d + 1) ==
            Rational(factorial(2 * d) * G[d].eval(rat(1, N))));
  }
  // The displayed degree-one evaluation: G_1(1/N) = -N^2 + N^2/(4N^2-1).
  for (int N = 1; N <= 12; ++N)
    CHECK(G[1].eval(rat(1, N)) ==
          Rational(rat(-1L * N * N) + rat(1L * N * N, 4L * N * N - 1)));
}

TEST_CASE("asymptotics of log Z recover slope and free energies") {
  AsymptoticFit fit = asymptoticFreeEnergies(200);
  // Pinned tolerances; the extrapolation lands far inside them.
  CHECK(std::abs(fit.slope - (-0.25)) <= 1e-9);
  CHECK(std::abs(fit.f2 / (-1.0 / 64) - 1) <= 1e-6);
  CHECK(std::abs(fit.f3 / (1.0 / 256) - 1) <= 1e-4);
}

}  // TEST_SUITE
