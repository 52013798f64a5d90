#pragma once

#include <array>
#include <map>
#include <utility>
#include <vector>

#include "trec/engine.hpp"

namespace trec {

// The two Gromov-Witten-type theories of P^1 computed by the recursion:
// Theta uses the curve x = z + 1/z, y = z/(z^2 - 1); Usual uses
// x = z + 1/z, y = log z.
enum class Flavor { Theta, Usual };

CurveId curveFor(Flavor f);

// 2x2 matrix over the rationals in the basis {1, omega} of H*(P^1):
// entry [alpha][beta] carries upper index alpha, lower index beta, where the
// dual basis is e^0 = omega, e^1 = 1 (the Poincare pairing is antidiagonal).
using SMat = std::array<std::array<Rational, 2>, 2>;

// Stationary invariants of P^1 and the surrounding structure: residue
// extraction from the recursion tensors, the unstable closed forms, the
// t/s coordinate change (ancestor coefficients), the classical genus-0
// two-point S-matrix, and the Hodge-type integrals of the Theta classes.
class P1Invariants {
public:
  explicit P1Invariants(Flavor flavor);
  P1Invariants(const P1Invariants&) = delete;
  P1Invariants& operator=(const P1Invariants&) = delete;

  Flavor flavor() const { return flavor_; }
  Engine& engine() { return eng_; }

  // Degree d forced by the dimension constraint for <(Theta) prod
  // tau_{b_i}(omega)>^g_d: Theta flavor sum(b_i + 1) = 2d, usual flavor
  // sum(b_i) = 2g - 2 + 2d.  Returns -1 when no nonnegative integer d fits
  // (the invariant is then zero).
  int degreeOf(int g, const std::vector<int>& b) const;

  // Stationary invariant <(Theta) tau_{b_1}(omega) ... tau_{b_n}(omega)>^g_d
  // with d = degreeOf(g, b).  Stable range: residue extraction of the
  // correlator tensor; (0,1) and (0,2) by the regularized closed forms.
  Rational stationary(int g, const std::vector<int>& b);

  // Per-leg residue functional on basis differentials:
  //   pairing(V, b) = Res_{z=0} x^{b+1}/(b+1)! V.
  // The same value is -Res_{z=inf} (total residue zero; the residues at the
  // branch points vanish because x^{b+1} V + its sigma-image is exact there).
  Rational pairing(const BasisIndex& idx, int b);
  Rational pairingAtInfinity(const BasisIndex& idx, int b);
  Rational pairingBranchResidue(const BasisIndex& idx, int b, int branch);

  // Unstable (0,1): Theta flavor -1/d!^2 at b = 2d - 1, usual flavor
  // +1/d!^2 at b = 2d - 2, both computed as residues of the regularized
  // one-point differential (omega_{0,1} corrected by the x-plane term),
  // not as hardcoded formulas.
  Rational onePointGenusZero(int b);

  // Unstable (0,2): coefficient extraction of the regularized two-point
  // kernel dz1 dz2/(z1 z2 - 1)^2; shared by both flavors.
  static Rational twoPointGenusZero(int b1, int b2);

  // The correlator tensor rewritten in the t/s coordinates
  //   t_k = (V^1_k - V^2_k)/2,  s_k = (V^1_k + V^2_k)/2
  // (V^i_k the basis ladder at branch point alpha_i).  In the returned
  // Correlator the BasisIndex branch field means 0 = t, 1 = s.  These
  // coefficients are the ancestor data of the theory.
  Correlator ancestors(int g, int n);

  // Stationary invariant rebuilt from the ancestor coefficients by applying
  // the residue functionals through the t/s coordinates; equals
  // stationary(g, b) identically (round-trip identity on the stationary
  // sector).
  Rational stationaryFromAncestors(int g, const std::vector<int>& b);

  // Insertion of tau_0(1) into a Theta-flavor stationary invariant: the
  // pulled-back Theta class absorbs one psi, so the unit leg acts as a
  // dilaton insertion and multiplies by 2g - 2 + n.
  Rational stationaryWithUnit(int g, const std::vector<int>& b);

  // Genus-0 two-point descendant matrix (S_k)^alpha_beta =
  // sum_d <tau_0(e^alpha) tau_k(e_beta)>^0_d of the usual theory, from the
  // string/divisor/topological-recursion relations seeded by the unstable
  // one- and two-point values.  S_0 = Id.
  static SMat sMatrix(int k);

  // <tau_{2d-2}(omega)>^0_d = 1/d!^2, the genus-0 degree-d one-point value.
  static Rational aCoeff(int d);

  // Free energy of the Theta theory in closed Bernoulli form,
  // (1 - 2^{-2g}) B_{2g} / (g (g - 1)) for g >= 2.
  static Rational thetaFreeEnergy(int g);

  // Integral of lambda_{g-1} Theta_g over the moduli space without marked
  // points (g >= 2): (-1)^{g-1} thetaFreeEnergy(g) / 2.
  static Rational hodgeTheta(int g);

  // Same with n >= 1 marked points; each added point multiplies by
  // (2g - 2 + n).  Base cases: n = 0 value above for g >= 2, and 1/8 at
  // (g, n) = (1, 1).
  static Rational hodgeThetaMarked(int g, int n);

  // Left-hand side of the boundary-strata evaluation of the genus-2 free
  // energy (usual flavor inputs):
  //   1/16 <tau_0(1)^2 tau_0(omega)^2>^0 +
  //   3/8 <tau_0(1)>^1 <tau_0(1) tau_0(omega)^2>^0 +
  //   3/8 <tau_0(omega)>^1 <tau_0(1)^2 tau_0(omega)>^0.
  // The one nonzero product pairs the engine value <tau_0(omega)>^1 = -1/24
  // with the classical cup-product integral <tau_0(1)^2 tau_0(omega)>^0 = 1.
  Rational strataRelation();

private:
  Flavor flavor_;
  Engine eng_;
  std::map<std::pair<BasisIndex, int>, Rational> pairCache_;
};

// Intersection-number dictionary for the two one-branch-point curves:
// <tau_{k_1} ... tau_{k_n}> = lambda^{2g-2} mu^n * (tensor coefficient of
// V_{k_1} x ... x V_{k_n}), with (lambda^2, mu) = (-1/2, -1) on x = z^2,
// y = z (psi intersection numbers) and (-2, 2) on x = z^2, y = 1/z
// (Theta-class psi intersection numbers).
Rational intersectionNumber(Engine& eng, int g, const std::vector<int>& ks);

}  // namespace trec
