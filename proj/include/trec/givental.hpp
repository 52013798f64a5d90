#pragma once

#include <map>
#include <vector>

#include "trec/auxbasis.hpp"
#include "trec/curve.hpp"
#include "trec/invariants.hpp"

namespace trec {

// Reconstruction of the recursion's correlator tensors from local curve data
// alone: a loop-group series R(z) computed by Gaussian expansion of the
// Cauchy kernel in steepest-descent coordinates at the branch points, edge
// weights obtained from R by an exact division, translation series read off
// the odd local expansion of y, and a weighted sum over stable graphs whose
// vertices carry psi intersection numbers (from the x = z^2, y = z curve) or
// Theta-psi intersection numbers (from x = z^2, y = 1/z).
//
// Scaling convention.  At branch point alpha_j let s be the standard local
// coordinate, x = x(alpha_j) + s^2/2, and let w = nu_j s with
// nu_j^2 = 1/x''(alpha_j).  The reparametrization z - alpha_j = e_j(w) then
// has rational coefficients, e_j(w) = w + O(w^2).  All matrices here are
// kept in the w-frame, which makes every entry rational at the cost of a
// column scaling: the w-frame series \hat R stores
//
//   [\hat R^{-1}(z)]^i_j = -sum_{m >= -1} G_{2m}^{(ij)} (2m-1)!!
//                          (nuSq_j z)^{m+1},
//   G^{(ij)}(w) = e_j'(w) / (e_j(w) + alpha_j - alpha_i)^2,
//
// with (-1)!! = 1 and (-3)!! = -1, so the m = -1 term contributes the
// identity matrix.  The orthonormal-frame series is the conjugation
// (nu_i/nu_j) [\hat R]^i_j; its twisted-loop identity R(z) R(-z)^T = Id
// becomes, in the w-frame,
//
//   \hat R(z) H \hat R(-z)^T = H,   H = diag(x''(alpha_i)),
//
// which involves only rational numbers and is the form checked here.

using Mat = std::vector<std::vector<Rational>>;

// Loop-group series of a curve in the w-frame scaling.  inverseSeries[m] and
// directSeries[m] are the coefficient matrices of z^m in \hat R^{-1}(z) and
// \hat R(z); both start at the identity.  metric is the diagonal of H.
struct LoopGroupSeries {
  CurveId id = CurveId::Airy;
  int dim = 0;
  int order = 0;  // coefficients stored for z^0 .. z^order
  std::vector<Mat> inverseSeries;
  std::vector<Mat> directSeries;
  std::vector<Rational> metric;

  const Mat& rInv(int m) const { return inverseSeries.at(m); }
  const Mat& r(int m) const { return directSeries.at(m); }
};

LoopGroupSeries loopGroupFromCurve(CurveId id, int order);

// \hat R(z) H \hat R(-z)^T == H through the stored order (equivalently for
// the inverse series with H^{-1} replaced by H on the right).
bool loopIdentityHolds(const LoopGroupSeries& lg);

// Edge weight coefficients E_{ab} (of w^a z^b), defined by the exact
// division (w + z) E(w, z) = H^{-1} - \hat R^{-1}(z)^T H^{-1} \hat R^{-1}(w),
// with the expansion-frame (column) indices left open: E_{ab}^{ij} couples
// the z power b at branch i to the w power a at branch j.  The numerator
// vanishes at w = -z by the transposed loop identity, so the division
// terminates; coefficients are stored for a + b <= order - 1.
struct EdgeWeights {
  int dim = 0;
  int order = 0;
  std::vector<std::vector<Mat>> coeff;  // coeff[a][b], D x D

  const Mat& at(int a, int b) const { return coeff.at(a).at(b); }
};

EdgeWeights edgeWeightsFrom(const LoopGroupSeries& lg);

// E(w, z) = E(z, w)^T on the stored window.
bool edgeSymmetryHolds(const EdgeWeights& e);

// (w + z) E(w, z) reproduces the defining numerator on the stored window.
bool edgeReconstructionMatches(const LoopGroupSeries& lg,
                               const EdgeWeights& e);

// Per-branch translation data from the odd local expansion of y.  With
// y = sum_j y_j s^j in the standard coordinate s at the branch point
// (j >= 0 where y is finite, j >= -1 where y has a simple pole), the
// translation series in the true psi-variable is
//
//   finite y:  T_k = -(2k-1)!! (y_{2k-1}/y_1)    z^k,  k >= 2,
//   pole:      T_k = -(2k-1)!! (y_{2k-1}/y_{-1}) z^k,  k >= 1,
//
// and each stored coefficient t[k] is the rational number obtained from the
// w-frame ratio: the nu-powers combine to (nuSq)^{k-1} (finite case) or
// (nuSq)^k (pole case), so no irrational number ever appears.  tft is the
// leading w-frame coefficient of y (y_1-slot for finite y, y_{-1}-slot for a
// pole); the orthonormal-frame value is nu * tft, resp. tft / nu.
struct BranchTranslation {
  bool irregular = false;
  Rational nuSq;
  Rational tft;
  std::vector<Rational> t;  // t[k], k = 0..order; zero below the first slot
};

struct GiventalData {
  CurveId id = CurveId::Airy;
  int order = 0;
  LoopGroupSeries loops;
  EdgeWeights edges;
  std::vector<BranchTranslation> branch;
};

GiventalData giventalFromCurve(CurveId id, int order);

// The two P^1 curves share (x, B), so their loop-group series coincide; the
// irregular curve's translation is the regular curve's translation shifted
// by one power of z (t_theta[k] == t_usual[k+1]), and the leading y-data
// agree after the frame change (y-tft == nuSq * Y-tft per branch).  Checked
// through the given order.
bool translationShiftMatches(int order);

// Per-branch constants converting the stable-graph sum to the engine's
// basis-decomposition tensor.  A graph contributes
//
//   1/|Aut| * prod_vertices  vertexGenus[beta]^(1 - g_v) * (vertex table)
//           * prod_dilaton   dilaton[beta] * t[q]
//           * prod_edges     edgePair[beta][beta'] * E_ab^{beta beta'}
//           * prod_leaves    leaf[beta][b] * [\hat R^{-1}_m]^{beta}_{b}
//
// summed over branch assignments, edge bidegrees and leaf offsets, where the
// vertex table is the psi (regular flavor) or Theta-psi (irregular flavor)
// intersection number with one tau-slot per half-edge.  The leaf constant
// carries both indices: the topological normalization contributes one factor
// per half-edge indexed by the vertex branch, so the leaf weight factors as
// (vertex-branch constant) x (input-branch constant) and the calibrated
// matrix has rank one.  The constants are fixed once per flavor against low
// sectors of the engine; the has* flags record which ones are meaningful
// (the irregular flavor never exercises off-diagonal leaf, dilaton, edge or
// genus constants in the sectors where its genus-0 tables vanish, and those
// stay unset).
struct AncestorDictionary {
  Flavor flavor = Flavor::Usual;
  Mat leaf;                          // leaf[vertex branch][input branch]
  std::vector<Rational> vertexGenus; // per vertex branch, exponent 1 - g_v
  std::vector<Rational> dilaton;     // per vertex branch
  Mat edgePair;                      // symmetric, per edge end pair
  bool hasOffDiagonalLeaf = false;
  bool hasVertexGenus = false;
  bool hasDilaton = false;
  bool hasEdgePair = false;
};

const AncestorDictionary& ancestorDictionary(Flavor f);

// Re-derive the dictionary constants from the engine's (1,1), (0,3), (0,4)
// sectors (readouts and a small exact linear solve) and compare with the
// frozen values above.  Returns false on any mismatch.
bool dictionaryConsistent(Flavor f);

// Correlator tensor of the flavor reconstructed by the stable-graph sum, as
// a map from sorted slot lists [(branch, k id), ...] to coefficients, for
// 2g - 2 + n <= 2.  Keys with zero value are omitted.
std::map<std::vector<BasisIndex>, Rational> graphSumAncestors(Flavor f, int g,
                                                              int n);

// Compare graphSumAncestors against the engine's correlator tensor
// (inv must wrap the same flavor).  True when every component agrees.
bool graphSumMatchesEngine(P1Invariants& inv, int g, int n);

}  // namespace trec
