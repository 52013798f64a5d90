#include "trec/auxbasis.hpp"

#include <algorithm>

#include "trec/common.hpp"

namespace trec {

AuxBasis::AuxBasis(const SpectralCurve& curve) : curve_(curve) {
  densities_.resize(curve_.branchCount());
}

const RatFunc& AuxBasis::density(int branch, int k) {
  auto& column = densities_.at(static_cast<size_t>(branch));
  if (column.empty()) {
    // V^i_0 = dz/(z - alpha)^2.
    Poly lin{-curve_.alphaValue(branch), Rational(1)};
    column.push_back(RatFunc(Poly(Rational(1)), lin * lin));
  }
  while (static_cast<int>(column.size()) <= k) {
    // V_{k+1} = d(V_k / dx): divide the density by x', differentiate.
    column.push_back((column.back() / curve_.xPrime()).derivative());
  }
  return column[static_cast<size_t>(k)];
}

LaurentSeries AuxBasis::seriesAt(int i, int k, int j, int order) {
  return density(i, k).expandAt(curve_.alpha(j), order);
}

std::map<BasisIndex, Rational> AuxBasis::decompose(
    const std::vector<LaurentSeries>& principalParts,
    const std::vector<int>& kCap) {
  const int nb = curve_.branchCount();
  if (static_cast<int>(principalParts.size()) != nb ||
      static_cast<int>(kCap.size()) != nb) {
    throw MathError("decompose: need one principal part and one cap per branch point");
  }

  std::vector<BasisIndex> unknowns;
  for (int i = 0; i < nb; ++i) {
    for (int k = 0; k <= kCap[i]; ++k) unknowns.push_back({i, k});
  }
  const size_t nu = unknowns.size();

  // Column expansions at every branch point, deep enough for every pole that
  // can appear on either side of the equation.
  std::vector<std::vector<LaurentSeries>> cols(nu);
  std::vector<int> lowest(nb, 0);
  for (int j = 0; j < nb; ++j) {
    const auto& pp = principalParts[j];
    if (!pp.windowIsZero()) lowest[j] = std::min(lowest[j], pp.lowest());
    if (pp.order() < 0) {
      throw MathError("decompose: principal part window must reach exponent -1");
    }
  }
  for (size_t c = 0; c < nu; ++c) {
    cols[c].reserve(static_cast<size_t>(nb));
    for (int j = 0; j < nb; ++j) {
      LaurentSeries s = seriesAt(unknowns[c].branch, unknowns[c].k, j, 0);
      if (!s.stripped().windowIsZero()) {
        lowest[j] = std::min(lowest[j], s.stripped().lowest());
      }
      cols[c].push_back(std::move(s));
    }
  }

  // Augmented system: one row per (branch point, negative exponent).
  std::vector<std::vector<Rational>> rows;
  for (int j = 0; j < nb; ++j) {
    for (int e = lowest[j]; e <= -1; ++e) {
      std::vector<Rational> row(nu + 1, Rational(0));
      for (size_t c = 0; c < nu; ++c) row[c] = cols[c][static_cast<size_t>(j)].coeff(e);
      row[nu] = principalParts[j].coeff(e);
      rows.push_back(std::move(row));
    }
  }

  // Exact Gaussian elimination.
  const size_t nr = rows.size();
  std::vector<size_t> pivotRow(nu, nr);
  size_t rank = 0;
  for (size_t c = 0; c < nu && rank < nr; ++c) {
    size_t p = rank;
    while (p < nr && rows[p][c] == 0) ++p;
    if (p == nr) continue;
    std::swap(rows[rank], rows[p]);
    const Rational inv = Rational(1) / rows[rank][c];
    for (size_t t = 0; t <= nu; ++t) rows[rank][t] *= inv;
    for (size_t r = 0; r < nr; ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const Rational f = rows[r][c];
      for (size_t t = c; t <= nu; ++t) rows[r][t] -= f * rows[rank][t];
    }
    pivotRow[c] = rank;
    ++rank;
  }

  // Residual check: every non-pivot row must have vanished entirely.  This
  // covers the residue rows (exponent -1), where all basis columns are zero.
  for (size_t r = rank; r < nr; ++r) {
    for (size_t t = 0; t <= nu; ++t) {
      if (rows[r][t] != 0) {
        throw MathError("decompose: target is not in the span of the auxiliary basis");
      }
    }
  }

  std::map<BasisIndex, Rational> out;
  for (size_t c = 0; c < nu; ++c) {
    if (pivotRow[c] == nr) {
      // Column never produced a pivot: the basis elements are independent, so
      // this means the system was rank-deficient.
      throw MathError("decompose: underdetermined system");
    }
    const Rational v = rows[pivotRow[c]][nu];
    if (v != 0) out[unknowns[c]] = v;
  }
  return out;
}

}  // namespace trec
