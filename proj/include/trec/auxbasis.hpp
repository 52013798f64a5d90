#pragma once

#include <compare>
#include <map>
#include <vector>

#include "trec/curve.hpp"

namespace trec {

// Index of an auxiliary differential: branch point number and derivative
// level k.
struct BasisIndex {
  int branch = 0;
  int k = 0;
  auto operator<=>(const BasisIndex&) const = default;
};

// The auxiliary differentials V^i_k used to store correlators:
//   V^i_0 = dz/(z - alpha_i)^2,      V^i_{k+1} = d(V^i_k / dx).
// All V^i_k have rational coefficients, zero residues, and pole order 2k+2 at
// alpha_i; for k >= 1 the x-division also introduces poles (order up to 2k)
// at the other branch points, so decomposition is a joint linear solve
// against principal parts at every branch point simultaneously.
class AuxBasis {
public:
  explicit AuxBasis(const SpectralCurve& curve);

  const SpectralCurve& curve() const { return curve_; }

  // Density f with V^i_k = f dz; cached, grown on demand.
  const RatFunc& density(int branch, int k);

  // Expansion of density(i,k) at branch point j.
  LaurentSeries seriesAt(int i, int k, int j, int order);

  // Solve sum c_{ik} V^i_k = target given the target's principal parts at
  // every branch point (principalParts[j] must be valid at least on
  // [lowest, 0)).  kCap[i] is the largest allowed k at branch i (-1: none).
  // Throws MathError if the system is inconsistent (nonzero residual,
  // including any nonzero residue row) or underdetermined.
  std::map<BasisIndex, Rational> decompose(
      const std::vector<LaurentSeries>& principalParts,
      const std::vector<int>& kCap);

private:
  const SpectralCurve& curve_;
  std::vector<std::vector<RatFunc>> densities_;  // [branch][k]
};

}  // namespace trec
