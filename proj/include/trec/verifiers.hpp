#pragma once

#include <map>
#include <string>
#include <vector>

#include "trec/invariants.hpp"
#include "trec/ratfunc.hpp"

namespace trec {

// Cross-checks of the recursion output against independent descriptions of
// the same invariants: the third-order ODE for the 1-point series, the
// degree-indexed rational series G_d, the closed-form usual-flavor series
// H_d, the quantum-curve recursion for the wave function, the Toda lattice
// functional equation, and the tanh generating series of the Euler-type
// characters.  Everything here is exact rational arithmetic.

// --- 1-point series in the y-basis -----------------------------------------
//
// On x = z + 1/z both flavors share y(x)^2 = 1/(x^2 - 4); the Theta-flavor
// 1-point series of fixed genus are odd polynomials in y.  The operators
//   D = 4/(x y^2) d/dx + 4,   E = 1/(x y^4) d^3/dx^3 + 8/y^2 d^2/dx^2
//                                 + (14 x^2 - 24)/x d/dx + 4
// act triangularly on monomials:
//   D y^k = 4 (1 - k) y^k,
//   E y^k = (1 - k)(k - 2)^2 y^k - 4 k^2 (k - 2) y^{k+2},
// and the ladder D W_g = E W_{g-1} with W_0 = -y determines every W_g.
class YPolynomial {
public:
  using Terms = std::map<int, Rational>;  // odd exponent k -> coefficient

  YPolynomial() = default;
  explicit YPolynomial(Terms t);

  const Terms& terms() const { return terms_; }
  Rational coeff(int k) const;
  int degree() const;  // largest exponent with nonzero coefficient (0: zero)
  bool operator==(const YPolynomial& other) const = default;

  YPolynomial applyD() const;
  YPolynomial applyE() const;

  // Coefficients of x^{-(2d+1)}, d = 0..dmax, of the expansion at x = infinity
  // through y(x) = x^{-1} (1 - 4 x^{-2})^{-1/2}.
  std::vector<Rational> xCoefficients(int dmax) const;

  std::string str() const;

private:
  Terms terms_;
};

// W_0, ..., W_gmax from the ODE ladder.  Solving D W_g = E W_{g-1} requires
// the y^1-coefficient of the right side to vanish (D has kernel there);
// that is asserted, and W_g carries no y^1 term for g >= 1.
std::vector<YPolynomial> onePointLadder(int gmax);

// The same polynomial extracted from the recursion: omega_{g,1} divided by
// dx, peeled into powers of the global rational function y(z).  Exact; the
// peel must terminate with zero remainder and no y^1 term.
YPolynomial onePointFromRecursion(P1Invariants& inv, int g);

// --- degree-indexed 1-point series -----------------------------------------
//
// G_d(h) = sum_g h^{2g-2} <Theta tau_{2d-1}(omega)>^g_d obeys
//   d^2 (1 - (d - 1/2)^2 h^2) G_d
//     = (1 - (2d^2 - 3d + 3/2) h^2) G_{d-1} + h^2 G_{d-2},
// G_{-1} = 0, G_0 = -h^{-2}; each G_d is rational in h^2 with simple poles
// only at h^2 = 0 and h^2 = 4/(2m-1)^2, m = 1..d.  Returns G_0..G_dmax.
std::vector<RatFunc> onePointDegreeSeries(int dmax);

// Usual-flavor closed form H_d(h) = h^{-2}/d!^2 S(h)^{2d-1} with
// S(h) = sinh(h/2)/(h/2), as a Laurent series with exponents < order.
LaurentSeries usualOnePointSeries(int d, int order);

// Theta-flavor degree-one 2-point series sum_g h^{2g-2} <Theta tau_0^2>^g_1
// in closed form h^{-2} + 1/(4 - h^2).
RatFunc thetaTwoPointDegreeOne();

// --- wave function ----------------------------------------------------------
//
// The wave function psi(x) = Z^Theta(s_k = h k!/x^{k+1}) satisfies
//   ((4 - x^2) h^2 d^2/dx^2 - 2 x h^2 d/dx + 1 + h) psi = 0,
// and psi = x^{1/h} psi-hat with psi-hat = sum_D psihat_D x^{-2D} analytic at
// x = infinity.  Substituting the ansatz turns the ODE into the two-term
// recursion implemented here:
//   (2(D+1)(2D+1) h^2 - 4(D+1) h) psihat_{D+1}
//      = (8D(2D+1) h^2 - 16D h + 4(1-h)) psihat_D,
// psihat_0 = 1.  Returns psihat_0..psihat_dmax as rational functions of h.
std::vector<RatFunc> waveFromQuantumCurve(int dmax);

// The same coefficients assembled from the recursion's invariants:
//   log psi-hat = sum over connected sectors (g, {b_1..b_n}), n >= 1, of
//     h^{2g-2+n} <Theta prod tau_{b_i}(omega)>^g prod b_i! / prod mult_j!
//   placed at x^{-sum(b_i+1)},
// then exponentiated degree by degree.  Entry d of the result maps the
// h-exponent c to the coefficient of h^c x^{-2d}; coefficients are complete
// (all contributing sectors included) for c <= hWindow when the per-sector
// cutoff 2g - 2 + n <= hWindow + (dmax - d_sector) holds, which the
// implementation enforces.
std::vector<std::map<int, Rational>> waveFromRecursion(P1Invariants& inv,
                                                       int dmax,
                                                       int hWindow = 6);

// --- Toda lattice -----------------------------------------------------------
//
// With Z = exp(1/4 log h + sum of sectors), the functional equation
//   h^2 d^2/ds_0^2 log Z = Z- Z+ / Z^2,   Z± = Z(h/(1±h), {s_k/(1±h)}),
// holds: the argument shift rescales h and every insertion variable
// together, so a sector of genus g with n insertions picks up the factor
// (1±h)^{-(2g-2+n)} while 0-point terms keep (1±h)^{-(2g-2)}.
//
// Restricted to the empty s-monomial the equation reads
//   Z0(h/(1-h)) Z0(h/(1+h)) / Z0(h)^2 = h^2 H1(h),  Z0 = h^{1/4} exp(Phi),
// which determines Phi(h) = sum_{g>=2} F_g h^{2g-2} order by order from
// H1(h) alone; H1 itself comes out of the quantum curve via
// psihat_1 = h G_1 + 1/2 h^2 H1.  Returns F_2..F_gmax solved that way,
// independent of both the recursion engine and the closed Bernoulli form.
std::vector<Rational> todaFreeEnergies(int gmax);

// Degree-by-degree Toda solving.  For each extra-insertion multiset M of
// weight <= 4 the right side's M-coefficient involves only sectors of degree
// < deg, so the equation *solves* for the degree-deg series
// <Theta tau_0(omega)^2 prod_{b in M} tau_b(omega)>^g; the report compares
// that solved series against the recursion values for g <= gcap.
struct TodaMonomialReport {
  std::vector<int> monomial;       // sorted b-values of the extra insertions
  int degree = 0;                  // degree of the solved-for invariants
  bool matched = false;            // solved series == engine series on window
  std::vector<Rational> solved;    // entry g = solved <tau_0^2 M>^g, g=0..gcap
  std::vector<Rational> engine;    // entry g = recursion value, g=0..gcap
  std::string detail;              // first mismatch (empty when matched)
};
std::vector<TodaMonomialReport> todaStationaryCheck(P1Invariants& inv,
                                                    int gcap = 3);

// tanh(h/4) = sum_{g>=1} h^{2g-1} a_g/(2g-1)! with a_1 = 1/4 and
// a_g = (2g-2) F_g for g >= 2, checked through h^hmax (hmax odd).
bool tanhSeriesMatches(int hmax);

}  // namespace trec
