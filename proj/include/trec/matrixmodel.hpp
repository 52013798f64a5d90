#pragma once

#include <string>
#include <vector>

#include "trec/laurent.hpp"
#include "trec/poly.hpp"
#include "trec/rational.hpp"

namespace trec {

// Finite-N side of the eigenvalue ensemble on [-2, 2]^N with squared
// Vandermonde interaction and insertion couplings sigma_k to sum_i x_i^{k+1}:
// orthogonal-polynomial norms, the lattice identities they satisfy in
// sigma_0, the finite-N 1-point series, and the large-N asymptotics of the
// partition function.  Everything is exact rational arithmetic except
// asymptoticFreeEnergies, which is the one place floating point is allowed.

// Moment of the flat measure: integral of x^k dx over [-2, 2].
Rational flatMoment(int k);

// Pairing <f, g> = integral of f g dx over [-2, 2], exact via moments.
Rational flatInner(const Poly& f, const Poly& g);

// Monic orthogonal polynomials p_0..p_n for the flat measure (rescaled
// Legendre) and their squared norms H_j = <p_j, p_j>.
struct OrthoSystem {
  std::vector<Poly> p;
  std::vector<Rational> normSq;
};
OrthoSystem orthoSystem(int nmax);

// Closed form for the squared norm of the monic rescaled-Legendre
// polynomial: H_n = 2^{4n+2} (n!)^4 / ((2n+1) ((2n)!)^2).  Gram-Schmidt on
// the moments must reproduce this; the ratio is H_n/H_{n-1} = 4n^2/(4n^2-1).
Rational normSqClosed(int n);

// Partition function of the ensemble at sigma = 0 (up to the overall
// constant that every identity below is insensitive to):
// Z(N) = prod_{j<N} H_j.
Rational partitionFunction(int N);

// Second-order perturbation in sigma_0 of the weight exp(sigma_0 x) dx.
// With a_k = H_k/H_{k-1} (a_0 = 0) the norms obey the lattice flow
//   d^2/dsigma_0^2 log H_k = a_{k+1} - a_k,
// whose k = 0, 1 cases are the boundary relations, whose differences give
// the three-term form on the ratios
//   d^2/dsigma_0^2 log a_k = a_{k+1} + a_{k-1} - 2 a_k   (k >= 2),
// and whose telescoped sum over k < N is
//   d^2/dsigma_0^2 log Z(N) = H_N/H_{N-1} = Z(N+1) Z(N-1)/Z(N)^2.
// All four statements are verified exactly at sigma_0 = 0; Z is the
// Gram-Schmidt value throughout.
struct TodaNormReport {
  int N = 0;
  bool flow = false;          // flow identity for 0 <= k < N
  bool ratioForm = false;     // three-term ratio identity for 2 <= k < N
  bool telescoped = false;    // summed identity equals H_N/H_{N-1}
  bool todaEquation = false;  // summed identity equals Z(N+1)Z(N-1)/Z(N)^2
  std::string detail;         // first failing relation, empty when all hold
};
TodaNormReport todaNormIdentity(int N);

// Second-kind companion series q_n(x) = integral of p_n(t)/(x - t) dt as an
// exact series at x = infinity: q_0 is the Stieltjes transform of the flat
// measure and q_{n+1} = x q_n - a_n q_{n-1} (q_1 = x q_0 - H_0) shares the
// recurrence of the monic p_n.  Exponents are known below `order`.
LaurentSeries secondKindSeries(int n, int order);

// Wronskian normalization test: p_n q_n' - p_n' q_n = (2n+1) H_n / (4 - x^2)
// as series at infinity through the given order.
bool wronskianMatches(int n, int order);

// Finite-N 1-point series in the engine's convention: the coefficient of
// x^{-2d-1} is an exact rational function of N matching the degree-indexed
// series, (2d)! G_d(1/N).  Computed from the orthogonal-polynomial closed
// form N (p_{N-1} q_N' - p_N q_{N-1}')/H_{N-1}, negated: the raw combination
// (p_{N-1} q_N' - p_N q_{N-1}')/H_{N-1} is the eigenvalue-density resolvent
// sum_i <1/(x - x_i)>, whose N-scaled leading term +N^2/x has the opposite
// sign to the engine's base differential -y dx (G_0 = -h^{-2} gives
// -N^2/x).  That single global sign is the only convention choice in the
// module.
LaurentSeries finiteNOnePoint(int N, int order);

// The same series computed independently, without the Wronskian closed
// form: N times the termwise resolvent expansion
//   sum_{k<N} sum_m <x^m p_k, p_k>/H_k x^{-m-1},
// negated as above.
LaurentSeries finiteNOnePointDirect(int N, int order);

// Large-N asymptotics of log Z(N) (floating point quarantined here).
// log Z(N) = B N + C - 1/4 log N + sum_{g>=2} F_g N^{2-2g} + ...; centered
// third differences in N annihilate the linear and constant parts, and
// Richardson extrapolation in 1/N^2 recovers the log N slope (-1/4) and
// F_2, F_3.  The free energies F_g of the engine appear as the coefficients
// of the asymptotic expansion of the exact partition function.
struct AsymptoticFit {
  int nMax = 0;
  double slope = 0;  // fitted coefficient of log N
  double f2 = 0;     // fitted coefficient of N^{-2}
  double f3 = 0;     // fitted coefficient of N^{-4}
};
AsymptoticFit asymptoticFreeEnergies(int nMax);

}  // namespace trec
