#pragma once

#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "trec/auxbasis.hpp"
#include "trec/correlator.hpp"
#include "trec/curve.hpp"

namespace trec {

// Residue recursion on a spectral curve.  Correlation differentials are
// produced as symmetric tensors over the auxiliary basis; every coefficient
// is an exact rational.
//
// The recursion kernel at a branch point alpha is
//   K(z1, z) = 1/2 [1/(z1 - sigma(z)) - 1/(z1 - z)] / [(y(z) - y(sigma(z))) x'(z)]
// and omega_{g,n}(z1, ...) is the sum over branch points of residues of
// K(z1, z) applied to the standard quadratic combination of lower
// correlators, with omega_{0,1} = -y dx excluded and omega_{0,2} the Cauchy
// kernel.  The z1-dependence is extracted through the expansion of K in
// powers of (z - alpha), which yields the principal parts of the result at
// every branch point; those are then resolved against the auxiliary basis by
// an exact joint linear solve.
class Engine {
public:
  explicit Engine(CurveId id);
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  const SpectralCurve& curve() const { return curve_; }
  AuxBasis& basis() { return basis_; }

  // Stable correlation differential (2g - 2 + n > 0); memoized.
  const Correlator& correlator(int g, int n);

  // Largest possible pole order of the stable (g,n) correlator at a branch
  // point: 6g - 4 + 2n where y is finite, 2g where y has a pole.
  int poleBound(int g, int n, int branch) const;
  // Largest derivative level k usable at a branch point (pole order 2k + 2).
  int kCap(int g, int n, int branch) const;

  // <Phi, V^i_k> = sum over branch points of Res(Phi V^i_k) with dPhi = y dx,
  // evaluated by parts so only local y dx expansions are needed.
  const Rational& phiPairing(const BasisIndex& idx);

  // Contraction of omega_{g,n+1} with Phi in one leg.  The dilaton identity
  // says this equals (2 - 2g - n) * omega_{g,n}; with n = 0 the sole entry is
  // (2 - 2g) F_g.
  Correlator phiContraction(int g, int n);

  // F_g for g >= 2 from the contraction of omega_{g,1}.
  Rational freeEnergy(int g);

private:
  // A tensor slot during assembly: either a resolved basis element or a
  // principal-part monomial (z - alpha_branch)^exponent awaiting resolution.
  struct Slot {
    bool pending = false;
    int branch = 0;
    int k = 0;         // valid when !pending
    int exponent = 0;  // valid when pending (negative)
    auto operator<=>(const Slot&) const = default;
    static Slot resolved(const BasisIndex& b) { return {false, b.branch, b.k, 0}; }
    static Slot principalPart(int branch, int exponent) {
      return {true, branch, 0, exponent};
    }
  };
  using SlotKey = std::vector<Slot>;

  Correlator compute(int g, int n, int order);
  void accumulateBranch(int g, int n, int branch, int order,
                        std::map<SlotKey, Rational>& raw);

  const SpectralCurve& curve_;
  AuxBasis basis_;
  std::map<std::pair<int, int>, Correlator> memo_;
  std::map<BasisIndex, Rational> phiCache_;
  std::recursive_mutex mu_;
};

}  // namespace trec
