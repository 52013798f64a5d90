#include "trec/givental.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "trec/common.hpp"
#include "trec/engine.hpp"

namespace trec {

// Discrete assembly conventions, fixed by the calibration probe; kept as
// mutable knobs so the consistency check can demonstrate that the chosen
// combination is the only one reproducing the engine.
namespace giventalConventions {
int leafOrientation = 0;       // 0: rInv[input][vertex], 1: rInv[vertex][input]
int leafAlternate = 0;         // 1: weight leaf offset m by (-1)^m
int leafDirect = 0;            // 1: use the direct series in leaves
int edgeForm = 0;              // 0: column-open 1/H kernel, 1: row-open H kernel
int translationAlternate = 0;  // 1: weight translation t[q] by (-1)^q
}  // namespace giventalConventions

namespace {

Mat zeroMat(int d) { return Mat(static_cast<std::size_t>(d), std::vector<Rational>(static_cast<std::size_t>(d), Rational(0))); }

Mat identityMat(int d) {
  Mat m = zeroMat(d);
  for (int i = 0; i < d; ++i) m[i][i] = 1;
  return m;
}

bool matEqual(const Mat& a, const Mat& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return false;
    for (std::size_t j = 0; j < a[i].size(); ++j)
      if (!(a[i][j] == b[i][j])) return false;
  }
  return true;
}

Mat matMul(const Mat& a, const Mat& b) {
  const int d = static_cast<int>(a.size());
  Mat out = zeroMat(d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      if (a[i][k] == 0) continue;
      for (int j = 0; j < d; ++j) out[i][j] += Rational(a[i][k] * b[k][j]);
    }
  return out;
}

// The local chart at branch j: z - alpha_j = e_j(w) with
// 2 nuSq_j (x(z) - x(alpha_j)) = w^2.  e_j has rational coefficients and
// leading coefficient exactly 1.
LaurentSeries reparamSeries(const SpectralCurve& curve, int j, int wOrder) {
  const BranchPoint& bp = curve.branchPoints()[static_cast<std::size_t>(j)];
  LaurentSeries xs = curve.xShifted(j, wOrder + 3);
  LaurentSeries unit = (xs * Rational(bp.nuSq * 2)).shifted(-2);
  LaurentSeries phi = sqrtUnitSeries(unit).shifted(1);
  return reversion(phi);
}

// f may have a simple pole; compose with e (valuation exactly 1).
LaurentSeries composeWithPole(const LaurentSeries& f, const LaurentSeries& e) {
  Rational principal = (f.lowest() <= -1) ? f.coeff(-1) : Rational(0);
  if (f.lowest() < -1) {
    for (int k = f.lowest(); k < -1; ++k)
      if (!(f.coeff(k) == 0)) throw MathError("composeWithPole: pole order above one");
  }
  LaurentSeries reg = LaurentSeries::zero(f.point(), f.order());
  for (int k = std::max(0, f.lowest()); k < f.order(); ++k) reg.setCoeff(k, f.coeff(k));
  LaurentSeries out = composeSeries(reg, e);
  if (!(principal == 0)) out += e.inverse() * principal;
  return out;
}

const GiventalData& cachedGivental(CurveId id) {
  static std::map<int, GiventalData> cache;
  const int key = static_cast<int>(id) * 4 + giventalConventions::edgeForm;
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, giventalFromCurve(id, 8)).first;
  return it->second;
}

// ---------------------------------------------------------------------------
// Vertex contribution tables: psi-intersection numbers on the moduli of
// curves, plain for the finite-branch flavor and theta-twisted for the
// pole flavor, both produced by the local one-branch curves.
// ---------------------------------------------------------------------------

struct VertexTable {
  Engine eng;
  bool irregular;
  std::map<std::pair<int, std::vector<int>>, Rational> memo;

  VertexTable(CurveId id, bool irr) : eng(id), irregular(irr) {}

  long dimension(int g, int n) const { return irregular ? g - 1 : 3L * g - 3 + n; }

  Rational value(int g, std::vector<int> pw) {
    const int n = static_cast<int>(pw.size());
    if (g == 0 && n < 3) return 0;
    if (g < 0) return 0;
    long total = 0;
    for (int k : pw) total += k;
    if (total != dimension(g, n)) return 0;
    std::sort(pw.begin(), pw.end());
    auto key = std::make_pair(g, pw);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    Rational v = intersectionNumber(eng, g, pw);
    memo.emplace(std::move(key), v);
    return v;
  }
};

VertexTable& vertexTable(Flavor f) {
  static VertexTable plain(CurveId::Airy, false);
  static VertexTable twisted(CurveId::Bessel, true);
  return f == Flavor::Usual ? plain : twisted;
}

// ---------------------------------------------------------------------------
// Graph-sum evaluation
// ---------------------------------------------------------------------------

Rational genusFactor(const AncestorDictionary& dict, int beta, int gv) {
  const int expo = 1 - gv;
  if (expo == 0) return 1;
  if (!dict.hasVertexGenus) throw MathError("ancestor dictionary: vertex genus weight not calibrated");
  return ratPow(dict.vertexGenus[static_cast<std::size_t>(beta)], expo);
}

// Sum over dilaton-type legs at one vertex: slot powers `pw` fixed, any
// number of extra legs carrying the translation series of branch `beta`.
Rational vertexWithTranslation(Flavor f, const AncestorDictionary& dict, const GiventalData& gd,
                               int beta, int gv, const std::vector<int>& pw) {
  VertexTable& table = vertexTable(f);
  const BranchTranslation& tr = gd.branch[static_cast<std::size_t>(beta)];
  const int base = static_cast<int>(pw.size());
  long slotSum = 0;
  for (int k : pw) slotSum += k;
  const int tmin = tr.irregular ? 1 : 2;
  Rational total = table.value(gv, pw);

  long mMax = tr.irregular ? (gv - 1 - slotSum) : (3L * gv - 3 + base - slotSum);
  if (mMax < 0) mMax = 0;
  for (long m = 1; m <= mMax; ++m) {
    long need = table.dimension(gv, base + static_cast<int>(m)) - slotSum;
    if (need < static_cast<long>(tmin) * m) continue;
    // enumerate nondecreasing tuples q_1 <= ... <= q_m, q_i >= tmin, sum = need
    std::vector<int> q(static_cast<std::size_t>(m), 0);
    Rational acc = 0;
    // simple recursive enumeration via lambda
    auto rec = [&](auto&& self, std::size_t idx, int lo, long rem) -> void {
      if (idx == q.size()) {
        if (rem != 0) return;
        if (static_cast<std::size_t>(q.back()) >= tr.t.size()) return;
        std::vector<int> full = pw;
        full.insert(full.end(), q.begin(), q.end());
        Rational tab = table.value(gv, full);
        if (tab == 0) return;
        Rational w = tab;
        for (int qi : q) {
          Rational tq = tr.t[static_cast<std::size_t>(qi)];
          if (giventalConventions::translationAlternate && (qi % 2 == 1)) tq = -tq;
          w *= tq;
        }
        if (w == 0) return;
        // divide by multiplicities of repeated q-values
        int run = 1;
        for (std::size_t i = 1; i < q.size(); ++i) {
          if (q[i] == q[i - 1]) {
            ++run;
            w /= run;
          } else {
            run = 1;
          }
        }
        acc += w;
        return;
      }
      const std::size_t left = q.size() - idx - 1;
      for (int v = lo; static_cast<long>(v) + static_cast<long>(lo) * static_cast<long>(left) <= rem; ++v) {
        if (static_cast<std::size_t>(v) >= tr.t.size()) break;
        q[idx] = v;
        self(self, idx + 1, v, rem - v);
      }
    };
    rec(rec, 0, tmin, need);
    if (acc == 0) continue;
    if (!dict.hasDilaton) throw MathError("ancestor dictionary: dilaton weight not calibrated");
    total += acc * ratPow(dict.dilaton[static_cast<std::size_t>(beta)], m);
  }
  return total;
}

// One vertex with ordinary legs `legs` (each dressed by the loop-group
// series) and fixed extra slot powers `extra` (edge ends).
Rational dressedVertex(Flavor f, const AncestorDictionary& dict, const GiventalData& gd,
                       int beta, int gv, const std::vector<BasisIndex>& legs,
                       const std::vector<int>& extra) {
  const int nAll = static_cast<int>(legs.size() + extra.size());
  long fixed = 0;
  for (int a : extra) fixed += a;
  long kSum = 0;
  for (const BasisIndex& b : legs) kSum += b.k;
  long budget = (f == Flavor::Usual) ? (3L * gv - 3 + nAll - kSum - fixed)
                                     : (static_cast<long>(gv) - 1 - kSum - fixed);
  if (budget < 0) return 0;

  std::vector<int> pw(extra.begin(), extra.end());
  pw.resize(extra.size() + legs.size());

  Rational total = 0;
  auto rec = [&](auto&& self, std::size_t li, long rem, Rational acc) -> void {
    if (acc == 0) return;
    if (li == legs.size()) {
      Rational core = vertexWithTranslation(f, dict, gd, beta, gv, pw);
      if (core == 0) return;
      total += acc * core;
      return;
    }
    const BasisIndex& leg = legs[li];
    for (long m = 0; m <= rem; ++m) {
      if (m > gd.loops.order) break;
      const Mat& series = giventalConventions::leafDirect ? gd.loops.r(static_cast<int>(m))
                                                          : gd.loops.rInv(static_cast<int>(m));
      Rational rt = giventalConventions::leafOrientation
                        ? series[static_cast<std::size_t>(beta)][static_cast<std::size_t>(leg.branch)]
                        : series[static_cast<std::size_t>(leg.branch)][static_cast<std::size_t>(beta)];
      if (giventalConventions::leafAlternate && (m % 2 == 1)) rt = -rt;
      if (rt == 0) continue;
      if (beta != leg.branch && !dict.hasOffDiagonalLeaf)
        throw MathError("ancestor dictionary: off-diagonal leaf weight not calibrated");
      pw[extra.size() + li] = leg.k + static_cast<int>(m);
      self(self, li + 1, rem - m,
           Rational(acc * rt * dict.leaf[static_cast<std::size_t>(beta)][static_cast<std::size_t>(leg.branch)]));
    }
  };
  rec(rec, 0, budget, Rational(1));
  return total;
}

Rational edgeEntry(const GiventalData& gd, int beta1, int p1, int beta2, int p2) {
  // coefficient of w^{p2} z^{p1} with the z index on the first branch
  if (p1 + p2 > gd.edges.order - 1) throw MathError("edge weight order exceeded");
  return gd.edges.at(p2, p1)[static_cast<std::size_t>(beta1)][static_cast<std::size_t>(beta2)];
}

Rational edgePairWeight(const AncestorDictionary& dict, int b1, int b2) {
  if (!dict.hasEdgePair) throw MathError("ancestor dictionary: edge weight not calibrated");
  return dict.edgePair[static_cast<std::size_t>(b1)][static_cast<std::size_t>(b2)];
}

Rational singleVertexGraph(Flavor f, const AncestorDictionary& dict, const GiventalData& gd,
                           int g, const std::vector<BasisIndex>& in) {
  const int D = gd.loops.dim;
  Rational total = 0;
  for (int beta = 0; beta < D; ++beta) {
    Rational core = dressedVertex(f, dict, gd, beta, g, in, {});
    if (core == 0) continue;
    total += core * genusFactor(dict, beta, g);
  }
  return total;
}

// genus reduced by one via a loop edge on a single vertex; |Aut| = 2
Rational loopGraph(Flavor f, const AncestorDictionary& dict, const GiventalData& gd,
                   int gv, const std::vector<BasisIndex>& in) {
  const int D = gd.loops.dim;
  const int cap = gd.edges.order - 1;
  Rational total = 0;
  for (int beta = 0; beta < D; ++beta) {
    Rational sum = 0;
    for (int a = 0; a <= cap; ++a)
      for (int b = 0; a + b <= cap; ++b) {
        Rational e = edgeEntry(gd, beta, a, beta, b);
        if (e == 0) continue;
        Rational core = dressedVertex(f, dict, gd, beta, gv, in, {a, b});
        if (core == 0) continue;
        sum += e * core;
      }
    if (sum == 0) continue;
    total += sum * genusFactor(dict, beta, gv) * edgePairWeight(dict, beta, beta);
  }
  return total / 2;
}

// two vertices joined by one edge; |Aut| = 1 (the vertices are distinguished
// by genus or by the legs they carry)
Rational bridgeGraph(Flavor f, const AncestorDictionary& dict, const GiventalData& gd,
                     int g1, const std::vector<BasisIndex>& legs1,
                     int g2, const std::vector<BasisIndex>& legs2) {
  const int D = gd.loops.dim;
  const int cap = gd.edges.order - 1;
  Rational total = 0;
  for (int b1 = 0; b1 < D; ++b1)
    for (int b2 = 0; b2 < D; ++b2) {
      Rational sum = 0;
      for (int p1 = 0; p1 <= cap; ++p1) {
        Rational left = dressedVertex(f, dict, gd, b1, g1, legs1, {p1});
        if (left == 0) continue;
        for (int p2 = 0; p1 + p2 <= cap; ++p2) {
          Rational e = edgeEntry(gd, b1, p1, b2, p2);
          if (e == 0) continue;
          Rational right = dressedVertex(f, dict, gd, b2, g2, legs2, {p2});
          if (right == 0) continue;
          sum += e * left * right;
        }
      }
      if (sum == 0) continue;
      total += sum * genusFactor(dict, b1, g1) * genusFactor(dict, b2, g2) *
               edgePairWeight(dict, b1, b2);
    }
  return total;
}

// two genus-zero vertices joined by a pair of parallel edges, one input leg
// on each vertex; |Aut| = 2
Rational doubleEdgeGraph(Flavor f, const AncestorDictionary& dict, const GiventalData& gd,
                         const BasisIndex& legA, const BasisIndex& legB) {
  const int D = gd.loops.dim;
  const int cap = gd.edges.order - 1;
  Rational total = 0;
  for (int b1 = 0; b1 < D; ++b1)
    for (int b2 = 0; b2 < D; ++b2) {
      Rational sum = 0;
      for (int p1 = 0; p1 <= cap; ++p1)
        for (int p2 = 0; p1 + p2 <= cap; ++p2) {
          Rational left = dressedVertex(f, dict, gd, b1, 0, {legA}, {p1, p2});
          if (left == 0) continue;
          for (int q1 = 0; p1 + q1 <= cap; ++q1) {
            Rational e1 = edgeEntry(gd, b1, p1, b2, q1);
            if (e1 == 0) continue;
            for (int q2 = 0; p2 + q2 <= cap && q1 + q2 <= cap; ++q2) {
              Rational e2 = edgeEntry(gd, b1, p2, b2, q2);
              if (e2 == 0) continue;
              Rational right = dressedVertex(f, dict, gd, b2, 0, {legB}, {q1, q2});
              if (right == 0) continue;
              sum += e1 * e2 * left * right;
            }
          }
        }
      if (sum == 0) continue;
      Rational ep = edgePairWeight(dict, b1, b2);
      total += sum * genusFactor(dict, b1, 0) * genusFactor(dict, b2, 0) * ep * ep;
    }
  return total / 2;
}

// genus-zero vertex carrying a self-loop, joined by a bridge to a genus-zero
// vertex carrying both legs; first stable at (g, n) = (1, 2); |Aut| = 2 (the
// loop half-edge swap)
Rational loopBridgeGraph(Flavor f, const AncestorDictionary& dict, const GiventalData& gd,
                         const std::vector<BasisIndex>& in) {
  const int D = gd.loops.dim;
  const int cap = gd.edges.order - 1;
  Rational total = 0;
  for (int bL = 0; bL < D; ++bL)
    for (int bR = 0; bR < D; ++bR) {
      Rational sum = 0;
      for (int a = 0; a <= cap; ++a)
        for (int b = 0; a + b <= cap; ++b) {
          Rational eLoop = edgeEntry(gd, bL, a, bL, b);
          if (eLoop == 0) continue;
          for (int pL = 0; pL <= cap; ++pL) {
            Rational left = dressedVertex(f, dict, gd, bL, 0, {}, {a, b, pL});
            if (left == 0) continue;
            for (int pR = 0; pL + pR <= cap; ++pR) {
              Rational eBr = edgeEntry(gd, bL, pL, bR, pR);
              if (eBr == 0) continue;
              Rational right = dressedVertex(f, dict, gd, bR, 0, in, {pR});
              if (right == 0) continue;
              sum += eLoop * eBr * left * right;
            }
          }
        }
      if (sum == 0) continue;
      total += sum * genusFactor(dict, bL, 0) * genusFactor(dict, bR, 0) *
               edgePairWeight(dict, bL, bL) * edgePairWeight(dict, bL, bR);
    }
  return total / 2;
}

Rational componentValue(Flavor f, const AncestorDictionary& dict, const GiventalData& gd,
                        int g, const std::vector<BasisIndex>& in) {
  const int n = static_cast<int>(in.size());
  if (g == 0 && n == 3) return singleVertexGraph(f, dict, gd, 0, in);
  if (g == 1 && n == 1) {
    return singleVertexGraph(f, dict, gd, 1, in) + loopGraph(f, dict, gd, 0, in);
  }
  if (g == 0 && n == 4) {
    Rational total = singleVertexGraph(f, dict, gd, 0, in);
    static const int splits[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
    for (const auto& s : splits) {
      total += bridgeGraph(f, dict, gd, 0, {in[static_cast<std::size_t>(s[0])], in[static_cast<std::size_t>(s[1])]},
                           0, {in[static_cast<std::size_t>(s[2])], in[static_cast<std::size_t>(s[3])]});
    }
    return total;
  }
  if (g == 1 && n == 2) {
    Rational total = singleVertexGraph(f, dict, gd, 1, in);
    total += loopGraph(f, dict, gd, 0, in);
    total += bridgeGraph(f, dict, gd, 1, {}, 0, in);
    total += doubleEdgeGraph(f, dict, gd, in[0], in[1]);
    total += loopBridgeGraph(f, dict, gd, in);
    return total;
  }
  throw MathError("ancestor graph sum: only 2g-2+n <= 2 supported");
}

void enumerateKeys(int D, int n, long kBudget, std::vector<BasisIndex>& cur,
                   std::vector<std::vector<BasisIndex>>& out) {
  if (static_cast<int>(cur.size()) == n) {
    out.push_back(cur);
    return;
  }
  BasisIndex lo{0, 0};
  if (!cur.empty()) lo = cur.back();
  for (int b = lo.branch; b < D; ++b) {
    const int kStart = (b == lo.branch && !cur.empty()) ? lo.k : 0;
    for (int k = kStart; k <= kBudget; ++k) {
      cur.push_back(BasisIndex{b, k});
      enumerateKeys(D, n, kBudget - k, cur, out);
      cur.pop_back();
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Loop group series
// ---------------------------------------------------------------------------

LoopGroupSeries loopGroupFromCurve(CurveId id, int order) {
  const SpectralCurve& curve = SpectralCurve::get(id);
  const int D = curve.branchCount();
  const int wOrd = 2 * order + 6;

  std::vector<LaurentSeries> e, eP;
  e.reserve(static_cast<std::size_t>(D));
  for (int j = 0; j < D; ++j) {
    e.push_back(reparamSeries(curve, j, wOrd));
    eP.push_back(e.back().derivative());
  }

  LoopGroupSeries lg;
  lg.id = id;
  lg.dim = D;
  lg.order = order;
  lg.inverseSeries.assign(static_cast<std::size_t>(order) + 1, zeroMat(D));
  lg.metric.resize(static_cast<std::size_t>(D));
  for (int i = 0; i < D; ++i)
    lg.metric[static_cast<std::size_t>(i)] = Rational(Rational(1) / curve.branchPoints()[static_cast<std::size_t>(i)].nuSq);

  for (int j = 0; j < D; ++j) {
    const Rational nuSq = curve.branchPoints()[static_cast<std::size_t>(j)].nuSq;
    for (int i = 0; i < D; ++i) {
      LaurentSeries den = e[static_cast<std::size_t>(j)];
      if (i != j) {
        Rational shift = Rational(curve.alphaValue(j) - curve.alphaValue(i));
        den += LaurentSeries::constant(den.point(), shift, den.order());
      }
      LaurentSeries g = eP[static_cast<std::size_t>(j)] * (den * den).inverse();
      for (int m = -1; m <= order - 1; ++m) {
        Rational g2m = g.coeff(2 * m);
        if (g2m == 0) continue;
        lg.inverseSeries[static_cast<std::size_t>(m + 1)][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            Rational(-g2m * oddDoubleFactorial(m) * ratPow(nuSq, m + 1));
      }
    }
  }

  if (!matEqual(lg.inverseSeries[0], identityMat(D)))
    throw MathError("loop group series: leading term is not the identity");

  // invert the series term by term
  lg.directSeries.assign(static_cast<std::size_t>(order) + 1, zeroMat(D));
  lg.directSeries[0] = identityMat(D);
  for (int m = 1; m <= order; ++m) {
    Mat acc = zeroMat(D);
    for (int t = 1; t <= m; ++t) {
      Mat prod = matMul(lg.inverseSeries[static_cast<std::size_t>(t)], lg.directSeries[static_cast<std::size_t>(m - t)]);
      for (int i = 0; i < D; ++i)
        for (int jj = 0; jj < D; ++jj) acc[i][jj] += prod[i][jj];
    }
    for (int i = 0; i < D; ++i)
      for (int jj = 0; jj < D; ++jj) lg.directSeries[static_cast<std::size_t>(m)][i][jj] = Rational(-acc[i][jj]);
  }
  return lg;
}

bool loopIdentityHolds(const LoopGroupSeries& lg) {
  const int D = lg.dim;
  for (int m = 0; m <= lg.order; ++m) {
    for (int i = 0; i < D; ++i)
      for (int j = 0; j < D; ++j) {
        Rational s = 0;
        for (int p = 0; p <= m; ++p) {
          const int q = m - p;
          Rational term = 0;
          for (int k = 0; k < D; ++k)
            term += Rational(lg.r(p)[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                             lg.metric[static_cast<std::size_t>(k)] *
                             lg.r(q)[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]);
          if (q % 2 == 1) term = -term;
          s += term;
        }
        Rational want = (m == 0 && i == j) ? lg.metric[static_cast<std::size_t>(i)] : Rational(0);
        if (!(s == want)) return false;
      }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Edge weights
// ---------------------------------------------------------------------------

EdgeWeights edgeWeightsFrom(const LoopGroupSeries& lg) {
  const int D = lg.dim;
  const int order = lg.order;

  // The edge kernel leaves the expansion-frame (column) indices open and
  // contracts the function (row) indices with the inverse metric:
  //   N_{ab}^{ij} = [a=0][b=0] (1/H_i) delta_ij
  //                 - sum_k rInv_b^{ki} (1/H_k) rInv_a^{kj},  a+b <= order,
  // the z power b sitting on the i column and the w power a on the j column.
  auto nCoeff = [&](int a, int b) {
    Mat out = zeroMat(D);
    for (int i = 0; i < D; ++i)
      for (int j = 0; j < D; ++j) {
        Rational s = 0;
        for (int k = 0; k < D; ++k) {
          if (giventalConventions::edgeForm == 0)
            s += Rational(lg.rInv(b)[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] *
                          lg.rInv(a)[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] /
                          lg.metric[static_cast<std::size_t>(k)]);
          else if (giventalConventions::edgeForm == 1)
            s += Rational(lg.rInv(b)[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                          lg.metric[static_cast<std::size_t>(k)] *
                          lg.rInv(a)[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]);
          else
            s += Rational(lg.rInv(b)[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] *
                          lg.metric[static_cast<std::size_t>(k)] *
                          lg.rInv(a)[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]);
        }
        out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = Rational(-s);
        if (a == 0 && b == 0 && i == j)
          out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
              (giventalConventions::edgeForm == 0)
                  ? Rational(Rational(1) / lg.metric[static_cast<std::size_t>(i)])
                  : lg.metric[static_cast<std::size_t>(i)];
      }
    return out;
  };

  EdgeWeights ew;
  ew.dim = D;
  ew.order = order;
  ew.coeff.resize(static_cast<std::size_t>(order));
  for (int a = 0; a < order; ++a) {
    ew.coeff[static_cast<std::size_t>(a)].resize(static_cast<std::size_t>(order - a));
    for (int b = 0; a + b < order; ++b) {
      Mat sum = zeroMat(D);
      for (int t = 0; t <= b; ++t) {
        Mat n = nCoeff(a + 1 + t, b - t);
        for (int i = 0; i < D; ++i)
          for (int j = 0; j < D; ++j) {
            if (t % 2 == 0)
              sum[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += n[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            else
              sum[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -= n[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
          }
      }
      ew.coeff[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = std::move(sum);
    }
  }
  return ew;
}

bool edgeSymmetryHolds(const EdgeWeights& e) {
  for (int a = 0; a < e.order; ++a)
    for (int b = 0; a + b < e.order; ++b)
      for (int i = 0; i < e.dim; ++i)
        for (int j = 0; j < e.dim; ++j)
          if (!(e.at(a, b)[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] ==
                e.at(b, a)[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]))
            return false;
  return true;
}

bool edgeReconstructionMatches(const LoopGroupSeries& lg, const EdgeWeights& e) {
  const int D = lg.dim;
  for (int a = 0; a <= lg.order; ++a)
    for (int b = 0; a + b <= lg.order; ++b) {
      if (a == 0 && b == 0) continue;  // no edge coefficient contributes there
      Mat want = zeroMat(D);
      for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j) {
          Rational s = 0;
          for (int k = 0; k < D; ++k)
            s += Rational(lg.rInv(b)[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] *
                          lg.rInv(a)[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] /
                          lg.metric[static_cast<std::size_t>(k)]);
          want[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = Rational(-s);
        }
      Mat got = zeroMat(D);
      auto addE = [&](int aa, int bb) {
        if (aa < 0 || bb < 0) return;
        for (int i = 0; i < D; ++i)
          for (int j = 0; j < D; ++j)
            got[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
                e.at(aa, bb)[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      };
      addE(a - 1, b);
      addE(a, b - 1);
      if (!matEqual(got, want)) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// Translation series
// ---------------------------------------------------------------------------

GiventalData giventalFromCurve(CurveId id, int order) {
  const SpectralCurve& curve = SpectralCurve::get(id);
  GiventalData gd;
  gd.id = id;
  gd.order = order;
  gd.loops = loopGroupFromCurve(id, order);
  gd.edges = edgeWeightsFrom(gd.loops);

  const int D = curve.branchCount();
  const int wOrd = 2 * order + 4;
  gd.branch.resize(static_cast<std::size_t>(D));
  for (int j = 0; j < D; ++j) {
    const BranchPoint& bp = curve.branchPoints()[static_cast<std::size_t>(j)];
    LaurentSeries e = reparamSeries(curve, j, wOrd);
    LaurentSeries dy = curve.deltaY(j, wOrd);
    LaurentSeries yw = composeWithPole(dy, e) / Rational(2);
    for (int k = std::max(yw.lowest(), -2); k < yw.order(); k += 2) {
      if (k % 2 != 0) continue;
      if (!(yw.coeff(k) == 0)) throw MathError("translation series: odd-part composition has an even term");
    }

    BranchTranslation& tr = gd.branch[static_cast<std::size_t>(j)];
    tr.irregular = bp.irregular;
    tr.nuSq = bp.nuSq;
    const int lead = bp.irregular ? -1 : 1;
    tr.tft = yw.coeff(lead);
    if (tr.tft == 0) throw MathError("translation series: vanishing leading coefficient");
    tr.t.assign(static_cast<std::size_t>(order) + 1, Rational(0));
    const int kMin = bp.irregular ? 1 : 2;
    for (int k = kMin; k <= order; ++k) {
      if (2 * k - 1 >= yw.order()) throw MathError("translation series: window too small");
      Rational ratio = Rational(yw.coeff(2 * k - 1) / tr.tft);
      const int grade = bp.irregular ? k : (k - 1);
      tr.t[static_cast<std::size_t>(k)] = Rational(-oddDoubleFactorial(k) * ratio * ratPow(bp.nuSq, grade));
    }
  }
  return gd;
}

bool translationShiftMatches(int order) {
  GiventalData th = giventalFromCurve(CurveId::ThetaP1, order + 1);
  GiventalData us = giventalFromCurve(CurveId::GwP1, order + 1);
  if (th.loops.dim != us.loops.dim) return false;
  for (int m = 0; m <= order; ++m)
    if (!matEqual(th.loops.rInv(m), us.loops.rInv(m))) return false;
  for (std::size_t j = 0; j < th.branch.size(); ++j) {
    const BranchTranslation& a = th.branch[j];
    const BranchTranslation& b = us.branch[j];
    if (!a.irregular || b.irregular) return false;
    if (!(a.tft == Rational(a.nuSq * b.tft))) return false;
    for (int k = 1; k <= order; ++k)
      if (!(a.t[static_cast<std::size_t>(k)] == b.t[static_cast<std::size_t>(k) + 1])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Ancestor dictionary: per-branch normalization constants fixed by matching
// low sectors of the graph sum against the recursion engine, then verified
// on every remaining sector through 2g-2+n = 2.
// ---------------------------------------------------------------------------

AncestorDictionary calibrateDictionary(Flavor f) {
  const CurveId cid = curveFor(f);
  const GiventalData& gd = cachedGivental(cid);
  const int D = gd.loops.dim;
  Engine eng(cid);
  VertexTable& table = vertexTable(f);

  AncestorDictionary dict;
  dict.flavor = f;
  dict.leaf = zeroMat(D);
  dict.vertexGenus.assign(static_cast<std::size_t>(D), Rational(0));
  dict.dilaton.assign(static_cast<std::size_t>(D), Rational(0));
  dict.edgePair = zeroMat(D);

  auto comp = [&](int g, int n, const std::vector<BasisIndex>& key) -> Rational {
    const auto& terms = eng.correlator(g, n).terms();
    std::vector<BasisIndex> k = key;
    std::sort(k.begin(), k.end());
    auto it = terms.find(k);
    return it == terms.end() ? Rational(0) : it->second;
  };

  if (f == Flavor::Theta) {
    // diagonal leaf constants from the (1,1) sector: single-vertex graphs
    // only, and no sector through 2g-2+n = 2 reaches any other constant
    Rational ref = table.value(1, {0});
    if (ref == 0) throw MathError("dictionary calibration: vanishing reference vertex value");
    for (int b = 0; b < D; ++b) {
      auto bi = static_cast<std::size_t>(b);
      dict.leaf[bi][bi] = Rational(comp(1, 1, {BasisIndex{b, 0}}) / ref);
    }
    return dict;
  }

  // finite-branch flavor: diagonal leaf totals from the pure (1,1) psi^1
  // components (top power: no offsets, no dilaton legs, no edges survive)
  Rational ref = table.value(1, {1});
  if (ref == 0) throw MathError("dictionary calibration: vanishing reference vertex value");
  std::vector<Rational> diag(static_cast<std::size_t>(D), Rational(0));
  for (int b = 0; b < D; ++b) {
    auto bi = static_cast<std::size_t>(b);
    diag[bi] = Rational(comp(1, 1, {BasisIndex{b, 1}}) / ref);
    if (diag[bi] == 0) throw MathError("dictionary calibration: leaf constant vanishes");
    dict.leaf[bi][bi] = diag[bi];
  }

  // vertex-genus constants from same-branch (0,3) components
  Rational ref3 = table.value(0, {0, 0, 0});
  dict.hasVertexGenus = true;
  for (int b = 0; b < D; ++b) {
    auto bi = static_cast<std::size_t>(b);
    Rational c = comp(0, 3, {BasisIndex{b, 0}, BasisIndex{b, 0}, BasisIndex{b, 0}});
    dict.vertexGenus[bi] = Rational(c / Rational(ratPow(diag[bi], 3) * ref3));
    if (dict.vertexGenus[bi] == 0)
      throw MathError("dictionary calibration: vertex-genus constant vanishes");
  }

  // The remaining constants enter the (1,1) psi^0 components and all (0,4)
  // components linearly: the two off-diagonal leaf entries (each appears at
  // most once per term there, the offset budget being one), the dilaton
  // constants (no room for a dilaton leg and an edge at once) and the three
  // edge-pair entries (at most one edge, bidegree (0,0)).
  dict.hasOffDiagonalLeaf = true;
  dict.hasDilaton = true;
  dict.hasEdgePair = true;
  const std::size_t nu = 7;
  auto setX = [&](const std::vector<Rational>& x) {
    dict.leaf[0][1] = x[0];
    dict.leaf[1][0] = x[1];
    dict.dilaton[0] = x[2];
    dict.dilaton[1] = x[3];
    dict.edgePair[0][0] = x[4];
    dict.edgePair[1][1] = x[5];
    dict.edgePair[0][1] = x[6];
    dict.edgePair[1][0] = x[6];
  };

  struct Equation {
    int g;
    std::vector<BasisIndex> key;
  };
  std::vector<Equation> eqs;
  for (int b = 0; b < D; ++b) eqs.push_back({1, {BasisIndex{b, 0}}});
  {
    std::vector<std::vector<BasisIndex>> keys;
    std::vector<BasisIndex> cur;
    enumerateKeys(D, 4, 1, cur, keys);
    for (auto& k : keys) eqs.push_back({0, std::move(k)});
  }

  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  std::vector<Rational> x(nu, Rational(0));
  for (const Equation& q : eqs) {
    std::fill(x.begin(), x.end(), Rational(0));
    setX(x);
    Rational c0 = componentValue(f, dict, gd, q.g, q.key);
    std::vector<Rational> row(nu, Rational(0));
    for (std::size_t j = 0; j < nu; ++j) {
      std::fill(x.begin(), x.end(), Rational(0));
      x[j] = 1;
      setX(x);
      row[j] = Rational(componentValue(f, dict, gd, q.g, q.key) - c0);
    }
    rows.push_back(std::move(row));
    rhs.push_back(Rational(comp(q.g, static_cast<int>(q.key.size()), q.key) - c0));
  }

  // exact Gaussian elimination on the overdetermined system
  const std::size_t m = rows.size();
  std::vector<Rational> sol(nu, Rational(0));
  std::size_t rank = 0;
  std::vector<std::size_t> pivotCol;
  for (std::size_t col = 0; col < nu && rank < m; ++col) {
    std::size_t piv = m;
    for (std::size_t r = rank; r < m; ++r)
      if (!(rows[r][col] == 0)) {
        piv = r;
        break;
      }
    if (piv == m) continue;
    std::swap(rows[piv], rows[rank]);
    std::swap(rhs[piv], rhs[rank]);
    Rational inv = Rational(Rational(1) / rows[rank][col]);
    for (std::size_t c = col; c < nu; ++c) rows[rank][c] *= inv;
    rhs[rank] *= inv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == rank) continue;
      Rational factor = rows[r][col];
      if (factor == 0) continue;
      for (std::size_t c = col; c < nu; ++c) rows[r][c] -= Rational(factor * rows[rank][c]);
      rhs[r] -= Rational(factor * rhs[rank]);
    }
    pivotCol.push_back(col);
    ++rank;
  }
  if (rank < nu) throw MathError("dictionary calibration: underdetermined linear system");
  for (std::size_t r = rank; r < m; ++r)
    if (!(rhs[r] == 0)) throw MathError("dictionary calibration: inconsistent linear system");
  for (std::size_t r = 0; r < rank; ++r) sol[pivotCol[r]] = rhs[r];
  setX(sol);

  // the leaf matrix must factor through one vertex-indexed and one
  // input-indexed constant, i.e. have rank one
  if (!(Rational(dict.leaf[0][1] * dict.leaf[1][0]) == Rational(dict.leaf[0][0] * dict.leaf[1][1])))
    throw MathError("dictionary calibration: leaf matrix is not rank one");
  return dict;
}

// Closed-form dictionary: in the metric-normalized frame every conversion
// factor between the engine's rational basis and the normalized canonical
// frame of the graph sum is a fourth root of unity times a rational, and the
// phases cancel positionally, leaving the constants below.
AncestorDictionary firstPrinciplesDictionary(Flavor f) {
  AncestorDictionary dict;
  dict.flavor = f;
  const int D = 2;
  dict.leaf = {{Rational(1), Rational(-1)}, {Rational(-1), Rational(1)}};
  dict.hasOffDiagonalLeaf = true;
  dict.vertexGenus = {Rational(1, 2), Rational(-1, 2)};
  dict.hasVertexGenus = true;
  dict.dilaton.assign(static_cast<std::size_t>(D), Rational(1));
  dict.hasDilaton = true;
  dict.edgePair = {{Rational(1), Rational(-1)}, {Rational(-1), Rational(1)}};
  dict.hasEdgePair = true;
  return dict;
}

namespace {
AncestorDictionary dictOverride[2];
bool dictOverrideSet[2] = {false, false};
}  // namespace

// Testing hook: force a dictionary instead of the frozen/calibrated one.
void setDictionaryOverride(Flavor f, const AncestorDictionary& dict) {
  dictOverride[f == Flavor::Usual ? 0 : 1] = dict;
  dictOverrideSet[f == Flavor::Usual ? 0 : 1] = true;
}

void clearDictionaryOverride(Flavor f) { dictOverrideSet[f == Flavor::Usual ? 0 : 1] = false; }

const AncestorDictionary& ancestorDictionary(Flavor f) {
  if (dictOverrideSet[f == Flavor::Usual ? 0 : 1]) return dictOverride[f == Flavor::Usual ? 0 : 1];
  static std::map<std::array<int, 6>, AncestorDictionary> cache;
  const std::array<int, 6> key{f == Flavor::Usual ? 0 : 1,
                               giventalConventions::leafOrientation,
                               giventalConventions::leafAlternate,
                               giventalConventions::leafDirect,
                               giventalConventions::edgeForm,
                               giventalConventions::translationAlternate};
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, calibrateDictionary(f)).first;
  return it->second;
}

// Testing hook: per-graph contributions to one ancestor component.
std::vector<std::pair<std::string, Rational>> graphComponentParts(
    Flavor f, int g, int n, const std::vector<BasisIndex>& key) {
  const AncestorDictionary& dict = ancestorDictionary(f);
  const GiventalData& gd = cachedGivental(curveFor(f));
  std::vector<std::pair<std::string, Rational>> parts;
  if (g == 0 && n == 3) {
    parts.emplace_back("single", singleVertexGraph(f, dict, gd, 0, key));
  } else if (g == 1 && n == 1) {
    parts.emplace_back("single", singleVertexGraph(f, dict, gd, 1, key));
    parts.emplace_back("loop", loopGraph(f, dict, gd, 0, key));
  } else if (g == 0 && n == 4) {
    parts.emplace_back("single", singleVertexGraph(f, dict, gd, 0, key));
    static const int splits[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
    for (const auto& s : splits)
      parts.emplace_back("bridge", bridgeGraph(f, dict, gd, 0,
                                               {key[static_cast<std::size_t>(s[0])], key[static_cast<std::size_t>(s[1])]},
                                               0,
                                               {key[static_cast<std::size_t>(s[2])], key[static_cast<std::size_t>(s[3])]}));
  } else if (g == 1 && n == 2) {
    parts.emplace_back("single", singleVertexGraph(f, dict, gd, 1, key));
    parts.emplace_back("loop", loopGraph(f, dict, gd, 0, key));
    parts.emplace_back("bridge", bridgeGraph(f, dict, gd, 1, {}, 0, key));
    parts.emplace_back("double", doubleEdgeGraph(f, dict, gd, key[0], key[1]));
    parts.emplace_back("loopBridge", loopBridgeGraph(f, dict, gd, key));
  } else {
    throw MathError("ancestor graph sum: only 2g-2+n <= 2 supported");
  }
  return parts;
}

bool dictionaryConsistent(Flavor f) {
  AncestorDictionary fresh = calibrateDictionary(f);
  const AncestorDictionary& frozen = ancestorDictionary(f);
  if (fresh.flavor != frozen.flavor) return false;
  if (!matEqual(fresh.leaf, frozen.leaf)) return false;
  if (fresh.hasOffDiagonalLeaf != frozen.hasOffDiagonalLeaf ||
      fresh.hasVertexGenus != frozen.hasVertexGenus || fresh.hasDilaton != frozen.hasDilaton ||
      fresh.hasEdgePair != frozen.hasEdgePair)
    return false;
  if (fresh.hasVertexGenus && fresh.vertexGenus != frozen.vertexGenus) return false;
  if (fresh.hasDilaton && fresh.dilaton != frozen.dilaton) return false;
  if (fresh.hasEdgePair && !matEqual(fresh.edgePair, frozen.edgePair)) return false;
  return true;
}

std::map<std::vector<BasisIndex>, Rational> graphSumAncestors(Flavor f, int g, int n) {
  const AncestorDictionary& dict = ancestorDictionary(f);
  const GiventalData& gd = cachedGivental(curveFor(f));
  const long kBudget = (f == Flavor::Usual) ? (3L * g - 3 + n) : (static_cast<long>(g) - 1);
  std::map<std::vector<BasisIndex>, Rational> out;
  if (kBudget < 0) return out;
  std::vector<std::vector<BasisIndex>> keys;
  std::vector<BasisIndex> cur;
  enumerateKeys(gd.loops.dim, n, kBudget, cur, keys);
  for (const auto& key : keys) {
    Rational v = componentValue(f, dict, gd, g, key);
    if (!(v == 0)) out.emplace(key, v);
  }
  return out;
}

bool graphSumMatchesEngine(P1Invariants& inv, int g, int n) {
  auto gs = graphSumAncestors(inv.flavor(), g, n);
  const auto& et = inv.engine().correlator(g, n).terms();
  for (const auto& [key, val] : gs) {
    auto it = et.find(key);
    Rational want = it == et.end() ? Rational(0) : it->second;
    if (!(val == want)) return false;
  }
  for (const auto& [key, val] : et) {
    if (val == 0) continue;
    auto it = gs.find(key);
    if (it == gs.end()) return false;
  }
  return true;
}

}  // namespace trec
