#include "trec/verifiers.hpp"

#include <algorithm>
#include <sstream>

#include "trec/common.hpp"

namespace trec {

namespace {

// Coefficient of u^j in (1 + u)^a for integer a (negative allowed):
// prod_{i<j} (a - i) / j!.
Rational genBinomial(long a, int j) {
  Rational r = 1;
  for (int i = 0; i < j; ++i) r = Rational(r * (a - i) / (i + 1));
  return r;
}

void multisetsOfWeightRec(int weight, int minPart, std::vector<int>& cur,
                          std::vector<std::vector<int>>& out) {
  if (weight == 0) {
    if (!cur.empty()) out.push_back(cur);
    return;
  }
  for (int part = minPart; part <= weight; ++part) {
    cur.push_back(part - 1);  // store the insertion label b = part - 1
    multisetsOfWeightRec(weight - part, part, cur, out);
    cur.pop_back();
  }
}

// All multisets {b_1 <= ... <= b_n}, n >= 1, with sum (b_i + 1) = weight.
std::vector<std::vector<int>> multisetsOfWeight(int weight) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  multisetsOfWeightRec(weight, 1, cur, out);
  return out;
}

Rational multiplicityFactorial(const std::vector<int>& sorted) {
  Rational f = 1;
  for (size_t i = 0; i < sorted.size();) {
    size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    f = Rational(f * factorial(static_cast<long>(j - i)));
    i = j;
  }
  return f;
}

}  // namespace

// --- YPolynomial ------------------------------------------------------------

YPolynomial::YPolynomial(Terms t) : terms_(std::move(t)) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->first % 2 == 0)
      throw MathError("YPolynomial: even exponent " + std::to_string(it->first));
    if (it->second == 0)
      it = terms_.erase(it);
    else
      ++it;
  }
}

Rational YPolynomial::coeff(int k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? Rational(0) : it->second;
}

int YPolynomial::degree() const {
  return terms_.empty() ? 0 : terms_.rbegin()->first;
}

YPolynomial YPolynomial::applyD() const {
  Terms out;
  for (const auto& [k, c] : terms_) {
    Rational v = Rational(c * 4 * (1 - k));
    if (v != 0) out[k] = v;
  }
  return YPolynomial(std::move(out));
}

YPolynomial YPolynomial::applyE() const {
  Terms out;
  auto add = [&out](int k, const Rational& v) {
    if (v == 0) return;
    Rational s = Rational(out[k] + v);
    if (s == 0)
      out.erase(k);
    else
      out[k] = s;
  };
  for (const auto& [k, c] : terms_) {
    add(k, Rational(c * (1 - k) * (k - 2) * (k - 2)));
    add(k + 2, Rational(c * (-4) * k * k * (k - 2)));
  }
  return YPolynomial(std::move(out));
}

std::vector<Rational> YPolynomial::xCoefficients(int dmax) const {
  // y^k = x^{-k} (1 - 4 x^{-2})^{-k/2}: the x^{-(2m+k)} coefficient is
  // (-4)^m * [u^m](1 + u)^{-k/2} with u = -4 x^{-2}, all rational despite the
  // half-integer exponent.
  std::vector<Rational> out(dmax + 1, Rational(0));
  for (const auto& [k, c] : terms_) {
    Rational binom = 1;  // prod_{i<m} (-k/2 - i) / m!
    for (int m = 0; 2 * m + k <= 2 * dmax + 1; ++m) {
      if (m > 0) binom = Rational(binom * Rational(-k - 2 * (m - 1), 2) / m);
      int d = (2 * m + k - 1) / 2;  // exponent 2m + k = 2d + 1 (k odd)
      out[d] = Rational(out[d] + c * binom * ratPow(-4, m));
    }
  }
  return out;
}

std::string YPolynomial::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    os << (first ? "" : " + ") << ratString(c) << " y^" << k;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

std::vector<YPolynomial> onePointLadder(int gmax) {
  std::vector<YPolynomial> out;
  out.push_back(YPolynomial({{1, Rational(-1)}}));  // W_0 = -y
  for (int g = 1; g <= gmax; ++g) {
    YPolynomial rhs = out.back().applyE();
    if (rhs.coeff(1) != 0)
      throw MathError("onePointLadder: E image has a y^1 component at g = " +
                      std::to_string(g));
    YPolynomial::Terms w;
    for (const auto& [k, c] : rhs.terms()) {
      if (k == 1) continue;
      w[k] = Rational(c / (4 * (1 - k)));  // invert D on y^k, k != 1
    }
    out.push_back(YPolynomial(std::move(w)));
  }
  return out;
}

YPolynomial onePointFromRecursion(P1Invariants& inv, int g) {
  if (inv.flavor() != Flavor::Theta)
    throw MathError("onePointFromRecursion: Theta flavor required");
  if (g == 0) return YPolynomial({{1, Rational(-1)}});
  const Correlator& c = inv.engine().correlator(g, 1);
  RatFunc w;
  for (const auto& [key, val] : c.terms())
    w += val * inv.engine().basis().density(key[0].branch, key[0].k);
  RatFunc wx = w / inv.engine().curve().xPrime();
  const RatFunc& y = inv.engine().curve().yRat();
  YPolynomial::Terms terms;
  for (int k = 1; k <= 2 * g + 1; k += 2) {
    // wx / y^k is regular at z = infinity and its value there is the y^k
    // coefficient; subtracting peels the polynomial from the bottom up.
    LaurentSeries s = (wx / y.pow(k)).expandAt(ExpansionPoint::infinity(), 1);
    for (int e = s.lowest(); e < 0; ++e)
      if (s.coeff(e) != 0)
        throw MathError("onePointFromRecursion: unexpected growth at infinity");
    Rational a = s.coeff(0);
    if (a != 0) terms[k] = a;
    wx -= a * y.pow(k);
  }
  if (!wx.isZero())
    throw MathError("onePointFromRecursion: remainder after peeling y-powers");
  if (terms.count(1))
    throw MathError("onePointFromRecursion: unexpected y^1 term at g = " +
                    std::to_string(g));
  return YPolynomial(std::move(terms));
}

// --- degree series ----------------------------------------------------------

std::vector<RatFunc> onePointDegreeSeries(int dmax) {
  RatFunc h = RatFunc::x();
  RatFunc h2 = h * h;
  std::vector<RatFunc> g;
  g.push_back(RatFunc(-1) / h2);  // G_0 = -h^{-2}
  RatFunc prev2;                  // G_{-1} = 0
  for (int d = 1; d <= dmax; ++d) {
    RatFunc lead = Rational(d * d) *
                   (RatFunc(1) - Rational((2 * d - 1) * (2 * d - 1), 4) * h2);
    RatFunc rhs =
        (RatFunc(1) - Rational(4 * d * d - 6 * d + 3, 2) * h2) * g.back() +
        h2 * prev2;
    prev2 = g.back();
    g.push_back(rhs / lead);
  }
  return g;
}

LaurentSeries usualOnePointSeries(int d, int order) {
  ExpansionPoint origin = ExpansionPoint::finite(0);
  // S(h) = sinh(h/2)/(h/2) = sum_m (h/2)^{2m} / (2m+1)!
  LaurentSeries s = LaurentSeries::zero(origin, order + 2);
  for (int m = 0; 2 * m < order + 2; ++m)
    s.addCoeff(2 * m, Rational(Rational(1) / factorial(2 * m + 1) / ratPow(4, m)));
  LaurentSeries p = s.power(2 * d - 1);
  return (p / Rational(factorial(d) * factorial(d))).shifted(-2).truncated(order);
}

RatFunc thetaTwoPointDegreeOne() {
  RatFunc h = RatFunc::x();
  return RatFunc(1) / (h * h) + RatFunc(1) / (RatFunc(4) - h * h);
}

// --- wave function ----------------------------------------------------------

std::vector<RatFunc> waveFromQuantumCurve(int dmax) {
  RatFunc h = RatFunc::x();
  std::vector<RatFunc> psi;
  psi.push_back(RatFunc(1));
  for (int D = 0; D < dmax; ++D) {
    RatFunc num = Rational(8 * D * (2 * D + 1)) * h * h -
                  Rational(16 * D) * h + Rational(4) - Rational(4) * h;
    RatFunc den = Rational(2 * (D + 1) * (2 * D + 1)) * h * h -
                  Rational(4 * (D + 1)) * h;
    psi.push_back(psi.back() * num / den);
  }
  return psi;
}

std::vector<std::map<int, Rational>> waveFromRecursion(P1Invariants& inv,
                                                       int dmax, int hWindow) {
  if (inv.flavor() != Flavor::Theta)
    throw MathError("waveFromRecursion: Theta flavor required");
  using HMap = std::map<int, Rational>;
  auto addTo = [](HMap& m, int c, const Rational& v) {
    if (v == 0) return;
    Rational s = Rational(m[c] + v);
    if (s == 0)
      m.erase(c);
    else
      m[c] = s;
  };
  // log psi-hat, split by the x^{-2d} degree.
  std::vector<HMap> logPsi(dmax + 1);
  for (int d = 1; d <= dmax; ++d) {
    int cap = hWindow + (dmax - d);  // sectors above this cannot reach hWindow
    for (const std::vector<int>& bs : multisetsOfWeight(2 * d)) {
      int n = static_cast<int>(bs.size());
      Rational fac = 1;
      for (int b : bs) fac = Rational(fac * factorial(b));
      fac = Rational(fac / multiplicityFactorial(bs));
      for (int g = 0; 2 * g - 2 + n <= cap; ++g) {
        Rational v = inv.stationary(g, bs);
        if (v != 0) addTo(logPsi[d], 2 * g - 2 + n, Rational(fac * v));
      }
    }
  }
  // Exponentiate in the x^{-2} variable: d psihat_d = sum_k k A_k psihat_{d-k}.
  auto mul = [&addTo](const HMap& a, const HMap& b) {
    HMap out;
    for (const auto& [ca, va] : a)
      for (const auto& [cb, vb] : b) addTo(out, ca + cb, Rational(va * vb));
    return out;
  };
  std::vector<HMap> psi(dmax + 1);
  psi[0] = {{0, Rational(1)}};
  for (int d = 1; d <= dmax; ++d) {
    HMap acc;
    for (int k = 1; k <= d; ++k) {
      HMap part = mul(logPsi[k], psi[d - k]);
      for (const auto& [c, v] : part) addTo(acc, c, Rational(v * k / d));
    }
    psi[d] = std::move(acc);
  }
  for (int d = 0; d <= dmax; ++d)
    std::erase_if(psi[d], [&](const auto& e) { return e.first > hWindow; });
  return psi;
}

// --- Toda lattice -----------------------------------------------------------

std::vector<Rational> todaFreeEnergies(int gmax) {
  RatFunc h = RatFunc::x();
  RatFunc psihat1 = waveFromQuantumCurve(1)[1];
  RatFunc g1 = onePointDegreeSeries(1)[1];
  // psihat_1 = h G_1 + 1/2 h^2 H_1 defines H_1 from the quantum curve.
  RatFunc h1 = (psihat1 - h * g1) * Rational(2) / (h * h);
  int order = 2 * gmax + 1;
  ExpansionPoint origin = ExpansionPoint::finite(0);
  // log of the right side Z0(h-)Z0(h+)/Z0(h)^2 = h^2 H_1(h).
  LaurentSeries rhs = (h * h * h1).expandAt(origin, order);
  LaurentSeries target =
      log1pSeries(rhs - LaurentSeries::constant(origin, 1, order));
  // h^{1/4}-part of Z0: 1/4 [log h- + log h+ - 2 log h] = -1/4 log(1 - h^2).
  LaurentSeries known = LaurentSeries::zero(origin, order);
  for (int m = 1; 2 * m < order; ++m)
    known.addCoeff(2 * m, Rational(1, 4 * m));
  std::vector<Rational> f(gmax + 1, Rational(0));
  for (int g = 2; g <= gmax; ++g) {
    // F_g h^{2g-2} [(1-h)^{-(2g-2)} + (1+h)^{-(2g-2)} - 2] first contributes
    // at h^{2g} with coefficient (2g-1)(2g-2) F_g; lower F's are known.
    Rational residual = Rational(target.coeff(2 * g) - known.coeff(2 * g));
    f[g] = Rational(residual / ((2 * g - 1) * (2 * g - 2)));
    for (int j = 0; 2 * g - 2 + j < order; ++j) {
      Rational c = Rational(genBinomial(-(2 * g - 2), j) *
                            (ratPow(-1, j) + 1) * f[g]);
      if (j == 0) c = Rational(c - 2 * f[g]);  // the -2 of the bracket
      known.addCoeff(2 * g - 2 + j, c);
    }
  }
  return f;
}

std::vector<TodaMonomialReport> todaStationaryCheck(P1Invariants& inv,
                                                    int gcap) {
  if (inv.flavor() != Flavor::Theta)
    throw MathError("todaStationaryCheck: Theta flavor required");
  // The functional equation is checked in the matrix-side normalization
  // sigma_k = s_k/h, where a (g, n) sector of log Z carries h^{2g-2+n} and
  // the shift h -> h/(1 ± h) multiplies it by (1 ± h)^{-(2g-2+n)}:
  //   d^2/dsigma_0^2 log Z = Z(h-) Z(h+) / Z(h)^2.
  // Per extra monomial M the comparison window runs to h^{2 gcap + |M|}.
  const int W = 2 * gcap + 4;  // global truncation (largest |M| is 4)
  using HMap = std::map<int, Rational>;
  using Key = std::vector<int>;
  auto addTo = [](HMap& m, int c, const Rational& v) {
    if (v == 0) return;
    Rational s = Rational(m[c] + v);
    if (s == 0)
      m.erase(c);
    else
      m[c] = s;
  };
  auto mul = [&addTo, W](const HMap& a, const HMap& b) {
    HMap out;
    for (const auto& [ca, va] : a)
      for (const auto& [cb, vb] : b)
        if (ca + cb <= W) addTo(out, ca + cb, Rational(va * vb));
    return out;
  };
  // h^e [(1-h)^{-e} + (1+h)^{-e} - 2], truncated at W.  Identically zero for
  // e = 0 and e = -1, which removes the unstable (0,1) and (0,2) sectors.
  auto bracket = [&addTo, W](long e) {
    HMap out;
    for (int j = 0; e + j <= W; ++j) {
      Rational c = Rational(genBinomial(-e, j) * (ratPow(-1, j) + 1));
      if (j == 0) c = Rational(c - 2);
      if (e + j >= 0) addTo(out, static_cast<int>(e) + j, c);
    }
    return out;
  };

  // Sector series of log Z, keyed by the insertion multiset B: the
  // coefficient of prod sigma_b is
  //   sum_g h^{2g-2+n} <Theta prod tau_b>^g / prod m_j!.
  auto sector = [&](const Key& bs) {
    HMap out;
    int n = static_cast<int>(bs.size());
    Rational cB = Rational(1 / multiplicityFactorial(bs));
    for (int g = 0; g <= gcap; ++g) {
      Rational v = inv.stationary(g, bs);
      if (v != 0) addTo(out, 2 * g - 2 + n, Rational(v * cB));
    }
    return out;
  };
  // Same with every genus term multiplied by its shift bracket.
  auto bracketedSector = [&](const Key& bs) {
    HMap out;
    int n = static_cast<int>(bs.size());
    Rational cB = Rational(1 / multiplicityFactorial(bs));
    for (int g = 0; g <= gcap; ++g) {
      Rational v = inv.stationary(g, bs);
      if (v == 0) continue;
      for (const auto& [c, w] : bracket(2 * g - 2 + n))
        addTo(out, c, Rational(w * v * cB));
    }
    return out;
  };

  // A := log of the right side.  Empty key: -1/4 log(1-h^2) from the h^{1/4}
  // factor plus the bracketed 0-point sectors F_g; other keys of weight <= 4.
  std::map<Key, HMap> a;
  for (int m = 1; 2 * m <= W; ++m)
    addTo(a[Key{}], 2 * m, Rational(1, 4 * m));
  for (int g = 2; 2 * g <= W; ++g) {
    Rational fg = P1Invariants::thetaFreeEnergy(g);
    for (const auto& [c, w] : bracket(2 * g - 2))
      addTo(a[Key{}], c, Rational(w * fg));
  }
  std::vector<Key> monomials = {Key{}};
  for (int weight : {2, 4})
    for (const Key& bs : multisetsOfWeight(weight)) {
      monomials.push_back(bs);
      HMap s = bracketedSector(bs);
      if (!s.empty()) a[bs] = std::move(s);
    }

  // exp(A) truncated at s-weight 4: split off the empty key, then the
  // positive-weight part needs at most two factors.
  auto weightOf = [](const Key& k) {
    int w = 0;
    for (int b : k) w += b + 1;
    return w;
  };
  HMap expA0 = {{0, Rational(1)}};
  {
    HMap pw = {{0, Rational(1)}};
    Rational inv_mfact = 1;
    for (int m = 1; 2 * m <= W; ++m) {
      pw = mul(pw, a[Key{}]);
      inv_mfact = Rational(inv_mfact / m);
      for (const auto& [c, v] : pw) addTo(expA0, c, Rational(v * inv_mfact));
    }
  }
  std::map<Key, HMap> rhs;
  rhs[Key{}] = {{0, Rational(1)}};
  for (const auto& [k1, s1] : a) {
    if (k1.empty()) continue;
    for (const auto& [c, v] : s1) addTo(rhs[k1], c, v);
    for (const auto& [k2, s2] : a) {
      if (k2.empty() || k2 < k1) continue;
      Key merged = k1;
      merged.insert(merged.end(), k2.begin(), k2.end());
      std::sort(merged.begin(), merged.end());
      if (weightOf(merged) > 4) continue;
      Rational half = (k1 == k2) ? Rational(1, 2) : Rational(1);
      for (const auto& [c, v] : mul(s1, s2))
        addTo(rhs[merged], c, Rational(v * half));
    }
  }
  for (auto& [key, series] : rhs) series = mul(series, expA0);

  // Reports: for each monomial M the equation solves the degree
  // (weight(M) + 2)/2 series <tau_0^2 prod_{b in M} tau_b>.
  std::vector<TodaMonomialReport> reports;
  for (const Key& m : monomials) {
    TodaMonomialReport rep;
    rep.monomial = m;
    rep.degree = (weightOf(m) + 2) / 2;
    Key full = m;
    full.push_back(0);
    full.push_back(0);
    std::sort(full.begin(), full.end());
    long m0 = std::count(full.begin(), full.end(), 0);
    Rational norm =
        Rational(Rational(m0 * (m0 - 1)) / multiplicityFactorial(full));
    // Left side d^2/dsigma_0^2 log Z restricted to the monomial M; the
    // genus-g term sits at h^{2g + |M|}.
    HMap lhs;
    for (const auto& [c, v] : sector(full))
      addTo(lhs, c, Rational(v * m0 * (m0 - 1)));
    HMap rhsM = rhs.count(m) ? rhs[m] : HMap{};
    int window = 2 * gcap + static_cast<int>(m.size());
    rep.matched = true;
    for (int c = 0; c <= window; ++c) {
      Rational l = lhs.count(c) ? lhs[c] : Rational(0);
      Rational r = rhsM.count(c) ? rhsM[c] : Rational(0);
      if (l != r) {
        rep.matched = false;
        rep.detail = "first mismatch at h^" + std::to_string(c) + ": left " +
                     ratString(l) + ", right " + ratString(r);
        break;
      }
    }
    for (int g = 0; g <= gcap; ++g) {
      int e = 2 * g + static_cast<int>(m.size());
      Rational r = rhsM.count(e) ? rhsM[e] : Rational(0);
      rep.solved.push_back(Rational(r / norm));
      rep.engine.push_back(inv.stationary(g, full));
    }
    reports.push_back(std::move(rep));
  }
  return reports;
}

bool tanhSeriesMatches(int hmax) {
  ExpansionPoint origin = ExpansionPoint::finite(0);
  int order = hmax + 1;
  LaurentSeries sinhS = LaurentSeries::zero(origin, order);
  LaurentSeries coshS = LaurentSeries::zero(origin, order);
  for (int m = 0; m < order; ++m) {
    Rational q = Rational(Rational(1) / factorial(m) / ratPow(4, m));
    if (m % 2 == 1)
      sinhS.addCoeff(m, q);
    else
      coshS.addCoeff(m, q);
  }
  LaurentSeries tanhS = sinhS * coshS.inverse();
  LaurentSeries lhs = LaurentSeries::zero(origin, order);
  for (int g = 1; 2 * g - 1 <= hmax; ++g) {
    Rational ag = g == 1 ? Rational(1, 4)
                         : Rational((2 * g - 2) * P1Invariants::thetaFreeEnergy(g));
    lhs.addCoeff(2 * g - 1, Rational(ag / factorial(2 * g - 1)));
  }
  for (int c = 0; c <= hmax; ++c)
    if (lhs.coeff(c) != tanhS.coeff(c)) return false;
  return true;
}

}  // namespace trec
