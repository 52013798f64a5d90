#include "trec/invariants.hpp"

#include <algorithm>
#include <mutex>

#include "trec/common.hpp"

namespace trec {

CurveId curveFor(Flavor f) {
  return f == Flavor::Theta ? CurveId::ThetaP1 : CurveId::GwP1;
}

P1Invariants::P1Invariants(Flavor flavor)
    : flavor_(flavor), eng_(curveFor(flavor)) {}

int P1Invariants::degreeOf(int g, const std::vector<int>& b) const {
  long s = 0;
  for (int x : b) s += x;
  long twoD = flavor_ == Flavor::Theta
                  ? s + static_cast<long>(b.size())
                  : s - (2 * static_cast<long>(g) - 2);
  if (twoD < 0 || twoD % 2 != 0) return -1;
  return static_cast<int>(twoD / 2);
}

Rational P1Invariants::pairing(const BasisIndex& idx, int b) {
  auto key = std::make_pair(idx, b);
  auto it = pairCache_.find(key);
  if (it != pairCache_.end()) return it->second;
  RatFunc f = eng_.curve().x().pow(b + 1) *
              Rational(Rational(1) / factorial(b + 1)) *
              eng_.basis().density(idx.branch, idx.k);
  Rational v = f.residueAt(ExpansionPoint::finite(0));
  return pairCache_.emplace(key, v).first->second;
}

Rational P1Invariants::pairingAtInfinity(const BasisIndex& idx, int b) {
  RatFunc f = eng_.curve().x().pow(b + 1) *
              Rational(Rational(1) / factorial(b + 1)) *
              eng_.basis().density(idx.branch, idx.k);
  return -f.residueAt(ExpansionPoint::infinity());
}

Rational P1Invariants::pairingBranchResidue(const BasisIndex& idx, int b,
                                            int branch) {
  RatFunc f = eng_.curve().x().pow(b + 1) *
              Rational(Rational(1) / factorial(b + 1)) *
              eng_.basis().density(idx.branch, idx.k);
  return f.residueAt(eng_.curve().alpha(branch));
}

Rational P1Invariants::onePointGenusZero(int b) {
  if (b < 0) throw MathError("onePointGenusZero: negative descendant index");
  if (degreeOf(0, {b}) < 0) return Rational(0);
  const SpectralCurve& c = eng_.curve();
  const Rational pref = Rational(1) / factorial(b + 1);
  if (flavor_ == Flavor::Theta) {
    // Regularized one-point differential: -y dx + dx/x, a rational form with
    // poles only at 0 and infinity once multiplied by x^{b+1}.
    RatFunc d01 = -(c.yRat() * c.xPrime()) + c.xPrime() / c.x();
    RatFunc f = c.x().pow(b + 1) * pref * d01;
    return f.residueAt(ExpansionPoint::finite(0));
  }
  // Usual flavor: y = log z, and the regularized form is (log x - log z) dx.
  // Only the expansion at the z -> infinity branch of x = infinity decays;
  // substituting z = 1/u turns the extraction -Res_{z=inf} into
  //   Res_{u=0} (1+u^2)^{b+1} (1-u^2) log(1+u^2) / ((b+1)! u^{b+3}) du.
  const int order = b + 6;
  const ExpansionPoint pt = ExpansionPoint::finite(0);
  Poly u2{Rational(1), Rational(0), Rational(1)};  // 1 + u^2
  LaurentSeries polyPart =
      RatFunc(u2.pow(b + 1) * Poly{Rational(1), Rational(0), Rational(-1)})
          .expandAt(pt, order);
  LaurentSeries logPart =
      log1pSeries(LaurentSeries::monomial(pt, 2, Rational(1), order));
  LaurentSeries shift =
      LaurentSeries::monomial(pt, -(b + 3), pref, order);
  return (polyPart * logPart * shift).residue();
}

Rational P1Invariants::twoPointGenusZero(int b1, int b2) {
  if (b1 < 0 || b2 < 0)
    throw MathError("twoPointGenusZero: negative descendant index");
  // rho_{b,m} = [z^{-m-1}] x^{b+1}/(b+1)!; the regularized two-point kernel
  // dz1 dz2/(z1 z2 - 1)^2 pairs them as sum_m (m+1) rho_{b1,m} rho_{b2,m}.
  auto rho = [](int b, int m) -> Rational {
    int j2 = b + m + 2;
    if (j2 % 2 != 0) return Rational(0);
    int j = j2 / 2;
    if (j < 0 || j > b + 1) return Rational(0);
    return binomial(b + 1, j) / factorial(b + 1);
  };
  Rational out(0);
  for (int m = 0; m <= std::min(b1, b2); ++m)
    out += Rational(m + 1) * rho(b1, m) * rho(b2, m);
  return out;
}

Rational P1Invariants::stationary(int g, const std::vector<int>& b) {
  const int n = static_cast<int>(b.size());
  if (n == 0) throw MathError("stationary: needs at least one insertion");
  for (int x : b)
    if (x < 0) throw MathError("stationary: negative descendant index");
  if (degreeOf(g, b) < 0) return Rational(0);
  if (g == 0 && n == 1) return onePointGenusZero(b[0]);
  if (g == 0 && n == 2) return twoPointGenusZero(b[0], b[1]);
  const Correlator& tensor = eng_.correlator(g, n);
  Rational total(0);
  for (const auto& [key, c] : tensor.terms()) {
    std::vector<BasisIndex> perm = key;
    Rational sum(0);
    do {
      Rational prod(1);
      for (int i = 0; i < n; ++i) prod *= pairing(perm[i], b[i]);
      sum += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    total += c * sum;
  }
  return total;
}

Correlator P1Invariants::ancestors(int g, int n) {
  const Correlator& tensor = eng_.correlator(g, n);
  // Leg-wise substitution V^1_k = s_k + t_k, V^2_k = s_k - t_k, accumulated
  // over every arrangement of every key so the result is assembled (and
  // checked) as a symmetric tensor.  Output branch field: 0 = t, 1 = s.
  std::map<std::vector<BasisIndex>, Rational> full;
  for (const auto& [key, c] : tensor.terms()) {
    std::vector<BasisIndex> perm = key;
    do {
      for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<BasisIndex> tsKey(n);
        Rational sign(1);
        for (int i = 0; i < n; ++i) {
          const bool pickT = (mask >> i) & 1;
          tsKey[i] = {pickT ? 0 : 1, perm[i].k};
          if (pickT && perm[i].branch == 1) sign = -sign;
        }
        full[tsKey] += c * sign;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  Correlator out(g, n);
  for (const auto& [key, v] : full)
    if (v != 0) out.setChecked(key, v);
  return out;
}

Rational P1Invariants::stationaryFromAncestors(int g,
                                               const std::vector<int>& b) {
  const int n = static_cast<int>(b.size());
  if (n == 0) throw MathError("stationaryFromAncestors: needs an insertion");
  if (2 * g - 2 + n <= 0)
    throw MathError("stationaryFromAncestors: stable range only");
  Correlator ts = ancestors(g, n);
  auto tsPairing = [&](const BasisIndex& idx, int m) -> Rational {
    Rational v1 = pairing({0, idx.k}, m);
    Rational v2 = pairing({1, idx.k}, m);
    return idx.branch == 0 ? Rational((v1 - v2) / 2) : Rational((v1 + v2) / 2);
  };
  Rational total(0);
  for (const auto& [key, c] : ts.terms()) {
    std::vector<BasisIndex> perm = key;
    Rational sum(0);
    do {
      Rational prod(1);
      for (int i = 0; i < n; ++i) prod *= tsPairing(perm[i], b[i]);
      sum += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    total += c * sum;
  }
  return total;
}

Rational P1Invariants::stationaryWithUnit(int g, const std::vector<int>& b) {
  if (flavor_ != Flavor::Theta)
    throw MathError("stationaryWithUnit: Theta flavor only");
  const int n = static_cast<int>(b.size());
  return Rational(2 * g - 2 + n) * stationary(g, b);
}

SMat P1Invariants::sMatrix(int k) {
  if (k < 0) throw MathError("sMatrix: negative index");
  static std::mutex mu;
  static std::vector<SMat> memo;
  std::scoped_lock lock(mu);
  if (memo.empty()) {
    SMat id{};
    id[0][0] = 1;
    id[1][1] = 1;
    memo.push_back(id);
    // (S_1)^alpha_beta: tau_1(1) is the dilaton leg, giving
    // <tau_0(omega) tau_1(1)> = -<tau_0(omega)>^0_1 = -1, and the string
    // equation gives <tau_0(1) tau_1(omega)> = <tau_0(omega)>^0_1 = 1.
    SMat s1{};
    s1[0][0] = -1;
    s1[1][1] = 1;
    memo.push_back(s1);
  }
  while (static_cast<int>(memo.size()) <= k) {
    const int m = static_cast<int>(memo.size());
    const SMat& prev = memo[m - 1];
    SMat cur{};
    // Divisor relation: d (S_m)^a_b = (M S_{m-1})^a_b
    //   - [a == 1] (S_m)^0_b - [b == 0] (S_{m-1})^a_1,
    // with M the omega-multiplication matrix [[0,1],[1,0]] and the degree
    // d = (1 - a + b + m)/2 read off the dimension constraint (the entry
    // vanishes unless d is a nonnegative integer; d >= 1 whenever it is an
    // integer and m >= 1, so the division is well-defined).
    for (int a = 0; a <= 1; ++a) {
      for (int bIdx = 0; bIdx <= 1; ++bIdx) {
        const int t = 1 - a + bIdx + m;
        if (t % 2 != 0 || t <= 0) continue;
        const Rational d(t / 2);
        Rational val = prev[1 - a][bIdx];
        if (a == 1) val -= cur[0][bIdx];
        if (bIdx == 0) val -= prev[a][1];
        cur[a][bIdx] = val / d;
      }
    }
    memo.push_back(cur);
  }
  return memo[k];
}

Rational P1Invariants::aCoeff(int d) {
  if (d < 1) throw MathError("aCoeff: degree must be positive");
  return Rational(1) / (factorial(d) * factorial(d));
}

Rational P1Invariants::thetaFreeEnergy(int g) {
  if (g < 2) throw MathError("thetaFreeEnergy: needs g >= 2");
  return (Rational(1) - ratPow(rat(1, 2), 2 * g)) * bernoulli(2 * g) /
         Rational(static_cast<long>(g) * (g - 1));
}

Rational P1Invariants::hodgeTheta(int g) {
  if (g < 2) throw MathError("hodgeTheta: needs g >= 2 (use the marked form)");
  Rational v = thetaFreeEnergy(g) / 2;
  return (g % 2 == 0) ? -v : v;
}

Rational P1Invariants::hodgeThetaMarked(int g, int n) {
  if (n < 0) throw MathError("hodgeThetaMarked: negative point count");
  if (g == 1) {
    if (n < 1) throw MathError("hodgeThetaMarked: genus 1 needs a point");
    Rational v = rat(1, 8);
    for (int j = 1; j < n; ++j) v *= Rational(j);
    return v;
  }
  Rational v = hodgeTheta(g);
  for (int j = 0; j < n; ++j) v *= Rational(2 * g - 2 + j);
  return v;
}

Rational P1Invariants::strataRelation() {
  if (flavor_ != Flavor::Usual)
    throw MathError("strataRelation: usual flavor only");
  // Engine input: the degree-0 one-point invariant <tau_0(omega)>^1 = -1/24
  // (the virtual class of constant genus-1 maps is 2 omega - lambda_1; only
  // the lambda_1 omega term integrates to something nonzero).
  const Rational tauOmegaGenusOne = stationary(1, {0});
  // Classical degree-0 inputs.  <tau_0(1)^2 tau_0(omega)>^0 is the triple
  // cup product integral of 1, 1, omega on P^1.  The other two genus-0
  // correlators and <tau_0(1)>^1 admit no degree of the right virtual
  // dimension at all.
  const Rational cupProduct(1);
  const Rational fourPoint(0);
  const Rational threePointMixed(0);
  const Rational unitGenusOne(0);
  return rat(1, 16) * fourPoint +
         rat(3, 8) * unitGenusOne * threePointMixed +
         rat(3, 8) * tauOmegaGenusOne * cupProduct;
}

Rational intersectionNumber(Engine& eng, int g, const std::vector<int>& ks) {
  const int n = static_cast<int>(ks.size());
  if (n == 0) throw MathError("intersectionNumber: needs an insertion");
  if (2 * g - 2 + n <= 0)
    throw MathError("intersectionNumber: stable range only");
  Rational lam2, mu;
  switch (eng.curve().id()) {
    case CurveId::Airy:
      lam2 = rat(-1, 2);
      mu = rat(-1);
      break;
    case CurveId::Bessel:
      lam2 = rat(-2);
      mu = rat(2);
      break;
    default:
      throw MathError("intersectionNumber: one-branch-point curves only");
  }
  std::vector<BasisIndex> key;
  key.reserve(ks.size());
  for (int k : ks) {
    if (k < 0) throw MathError("intersectionNumber: negative index");
    key.push_back({0, k});
  }
  Rational c = eng.correlator(g, n).coeff(key);
  return ratPow(lam2, g - 1) * ratPow(mu, n) * c;
}

}  // namespace trec
