#include "trec/engine.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <tuple>

#include "trec/common.hpp"

namespace trec {

namespace {

// Exact residue of a product of two expansions at the same point.  Throws
// TruncationError if either window is too short to pin every possibly
// nonzero term of the u^{-1} coefficient.
Rational productResidue(const LaurentSeries& a, const LaurentSeries& b) {
  Rational acc(0);
  for (int e = a.lowest(); e < a.order(); ++e) {
    int be = -1 - e;
    if (be >= b.order()) {
      if (a.coeff(e) != 0) throw TruncationError("product residue: window too short");
      continue;
    }
    acc += a.coeff(e) * b.coeff(be);
  }
  // Terms a_e b_{-1-e} with e >= a.order(): the a side is unknown, so any
  // known-nonzero b coefficient at -1-e makes the residue indeterminate.
  for (int be = b.lowest(); be <= -1 - a.order() && be < b.order(); ++be) {
    if (b.coeff(be) != 0) throw TruncationError("product residue: window too short");
  }
  return acc;
}

}  // namespace

Engine::Engine(CurveId id) : curve_(SpectralCurve::get(id)), basis_(curve_) {}

int Engine::poleBound(int g, int n, int branch) const {
  if (2 * g - 2 + n <= 0) throw MathError("pole bound: unstable (g,n)");
  return curve_.branchPoints()[static_cast<size_t>(branch)].irregular
             ? 2 * g
             : 6 * g - 4 + 2 * n;
}

int Engine::kCap(int g, int n, int branch) const {
  return (poleBound(g, n, branch) - 2) / 2;
}

const Correlator& Engine::correlator(int g, int n) {
  if (g < 0 || n < 1 || 2 * g - 2 + n <= 0)
    throw MathError("correlator: need a stable (g,n)");
  std::scoped_lock lock(mu_);
  auto key = std::make_pair(g, n);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  int order = 24 + 18 * g + 6 * n;
  for (int attempt = 0;; ++attempt) {
    try {
      return memo_.emplace(key, compute(g, n, order)).first->second;
    } catch (const TruncationError&) {
      if (attempt >= 3) throw;
      order *= 2;
    }
  }
}

void Engine::accumulateBranch(int g, int n, int branch, int order,
                              std::map<SlotKey, Rational>& raw) {
  const ExpansionPoint pt = curve_.alpha(branch);
  const int P1 = poleBound(g, n, branch);
  const int tMax = P1 + 1;       // one beyond the bound: solver validates
  const int mMax = std::max(P1, 0);
  const int legCount = n - 1;

  // Local kernel data.
  LaurentSeries xp = curve_.xPrime().expandAt(pt, order);
  LaurentSeries dy = curve_.deltaY(branch, order);
  LaurentSeries dinv = (dy * xp).inverse();
  const RatFunc& sigma = curve_.sigma();
  RatFunc sigmaPrime = sigma.derivative();
  LaurentSeries sp = sigmaPrime.expandAt(pt, order);
  LaurentSeries s1 =
      (sigma - RatFunc(curve_.alphaValue(branch))).expandAt(pt, order);

  // Powers of (z - alpha) and (sigma(z) - alpha).
  std::vector<LaurentSeries> uPow, sPow;
  uPow.push_back(LaurentSeries::constant(pt, Rational(1), order));
  sPow.push_back(LaurentSeries::constant(pt, Rational(1), order));
  const int powMax = std::max(tMax, mMax);
  for (int t = 1; t <= powMax; ++t) {
    uPow.push_back(LaurentSeries::monomial(pt, t, Rational(1), order));
    sPow.push_back(sPow.back() * s1);
  }

  // Kernel numerator halves: 1/2 [(sigma(z)-alpha)^t - (z-alpha)^t] per
  // power of the external variable's principal part, times the kernel
  // denominator inverse.
  std::vector<LaurentSeries> kern(static_cast<size_t>(tMax) + 1,
                                  LaurentSeries());
  for (int t = 1; t <= tMax; ++t) {
    kern[static_cast<size_t>(t)] = (sPow[static_cast<size_t>(t)] -
                                    uPow[static_cast<size_t>(t)]) *
                                   dinv * rat(1, 2);
  }

  // Series atoms.  A piece of the quadratic combination is
  // coefficient * zAtom(z) * sAtom(sigma(z)); atoms are cached expansions.
  // Atom keys: (0, basis id) for V-densities, (1, m) for (z-alpha)^m from a
  // Cauchy-kernel leg, (2, 0) for the full omega_{0,2}(z, sigma z) density,
  // (3, 0) for the constant 1.
  std::map<std::tuple<int, int, int>, int> zIds, sIds;
  std::vector<LaurentSeries> zAtoms, sAtoms;
  auto internAtom = [&](bool zSide, std::tuple<int, int, int> key,
                        auto makeSeries) -> int {
    auto& ids = zSide ? zIds : sIds;
    auto& atoms = zSide ? zAtoms : sAtoms;
    auto [it, inserted] = ids.emplace(key, static_cast<int>(atoms.size()));
    if (inserted) atoms.push_back(makeSeries());
    return it->second;
  };
  auto basisAtom = [&](bool zSide, const BasisIndex& b) -> int {
    return internAtom(zSide, {0, b.branch, b.k}, [&]() {
      const RatFunc& dens = basis_.density(b.branch, b.k);
      if (zSide) return dens.expandAt(pt, order);
      return (dens.compose(sigma) * sigmaPrime).expandAt(pt, order);
    });
  };
  auto cauchyAtom = [&](bool zSide, int m) -> int {
    return internAtom(zSide, {1, m, 0}, [&]() {
      if (zSide) return uPow[static_cast<size_t>(m)];
      return sPow[static_cast<size_t>(m)] * sp;
    });
  };
  auto oneAtom = [&](bool zSide) -> int {
    return internAtom(zSide, {3, 0, 0}, [&]() {
      return LaurentSeries::constant(pt, Rational(1), order);
    });
  };

  // Pieces: (leg tags, z atom, sigma atom) -> coefficient.  Legs are kept as
  // a full vector of slots for positions 0..n-2 (external variables 2..n).
  std::map<std::tuple<SlotKey, int, int>, Rational> pieces;

  // --- recursion term with omega_{g-1, n+1} --------------------------------
  if (g == 1 && n == 1) {
    // omega_{0,2}(z, sigma z) as a density in z: sigma'(z)/(z - sigma(z))^2.
    int za = internAtom(true, {2, 0, 0}, [&]() {
      RatFunc diff = RatFunc::x() - sigma;
      return (sigmaPrime / (diff * diff)).expandAt(pt, order);
    });
    pieces[{SlotKey{}, za, oneAtom(false)}] += Rational(1);
  } else if (g >= 1) {
    const Correlator& inner = correlator(g - 1, n + 1);
    for (const auto& [skey, c] : inner.terms()) {
      std::vector<BasisIndex> key = skey;  // sorted already
      do {
        SlotKey legs;
        legs.reserve(static_cast<size_t>(legCount));
        for (size_t i = 2; i < key.size(); ++i)
          legs.push_back(Slot::resolved(key[i]));
        pieces[{legs, basisAtom(true, key[0]), basisAtom(false, key[1])}] += c;
      } while (std::next_permutation(key.begin(), key.end()));
    }
  }

  // --- split terms ---------------------------------------------------------
  // Options for one factor omega_{gf, 1 + legs} with its first variable on
  // the z side (zSide) or the sigma(z) side: each option is a partial leg
  // assignment, an atom, and a coefficient.  Returns nothing if the factor
  // would be omega_{0,1} (excluded from the recursion).
  struct Option {
    std::map<int, Slot> legs;
    int atom;
    Rational c;
  };
  auto factorOptions = [&](int gf, const std::vector<int>& positions,
                           bool zSide) -> std::optional<std::vector<Option>> {
    const int sz = static_cast<int>(positions.size()) + 1;
    if (gf == 0 && sz == 1) return std::nullopt;
    std::vector<Option> opts;
    if (gf == 0 && sz == 2) {
      // Cauchy-kernel factor: expands into principal-part tags at this
      // branch point for the external leg.
      for (int m = 0; m <= mMax; ++m) {
        Option o;
        o.legs.emplace(positions[0], Slot::principalPart(branch, -(m + 2)));
        o.atom = cauchyAtom(zSide, m);
        o.c = Rational(m + 1);
        opts.push_back(std::move(o));
      }
      return opts;
    }
    const Correlator& inner = correlator(gf, sz);
    for (const auto& [skey, c] : inner.terms()) {
      std::vector<BasisIndex> key = skey;
      do {
        Option o;
        for (size_t i = 1; i < key.size(); ++i)
          o.legs.emplace(positions[i - 1], Slot::resolved(key[i]));
        o.atom = basisAtom(zSide, key[0]);
        o.c = c;
        opts.push_back(std::move(o));
      } while (std::next_permutation(key.begin(), key.end()));
    }
    return opts;
  };

  for (unsigned mask = 0; mask < (1u << legCount); ++mask) {
    std::vector<int> posA, posB;
    for (int p = 0; p < legCount; ++p) {
      if (mask & (1u << p)) {
        posA.push_back(p);
      } else {
        posB.push_back(p);
      }
    }
    for (int g1 = 0; g1 <= g; ++g1) {
      // Exclude omega_{0,1} factors up front: expanding the other factor
      // first would recurse into the correlator being computed.
      if (g1 == 0 && posA.empty()) continue;
      if (g - g1 == 0 && posB.empty()) continue;
      auto optsA = factorOptions(g1, posA, true);
      if (!optsA) continue;
      auto optsB = factorOptions(g - g1, posB, false);
      if (!optsB) continue;
      for (const auto& a : *optsA) {
        for (const auto& b : *optsB) {
          SlotKey legs(static_cast<size_t>(legCount));
          for (const auto& [p, s] : a.legs) legs[static_cast<size_t>(p)] = s;
          for (const auto& [p, s] : b.legs) legs[static_cast<size_t>(p)] = s;
          pieces[{legs, a.atom, b.atom}] += a.c * b.c;
        }
      }
    }
  }

  // --- assemble Q per leg assignment and take kernel residues --------------
  std::map<std::pair<int, int>, LaurentSeries> pairCache;
  auto atomProduct = [&](int za, int sa) -> const LaurentSeries& {
    auto it = pairCache.find({za, sa});
    if (it == pairCache.end()) {
      it = pairCache
               .emplace(std::make_pair(za, sa),
                        zAtoms[static_cast<size_t>(za)] *
                            sAtoms[static_cast<size_t>(sa)])
               .first;
    }
    return it->second;
  };

  std::map<SlotKey, LaurentSeries> qsum;
  for (const auto& [pk, c] : pieces) {
    if (c == 0) continue;
    const auto& [legs, za, sa] = pk;
    LaurentSeries term = atomProduct(za, sa) * c;
    auto it = qsum.find(legs);
    if (it == qsum.end()) {
      qsum.emplace(legs, std::move(term));
    } else {
      it->second += term;
    }
  }

  for (const auto& [legs, q] : qsum) {
    for (int t = 1; t <= tMax; ++t) {
      Rational r = productResidue(kern[static_cast<size_t>(t)], q);
      if (r == 0) continue;
      SlotKey full;
      full.reserve(static_cast<size_t>(n));
      full.push_back(Slot::principalPart(branch, -(t + 1)));
      full.insert(full.end(), legs.begin(), legs.end());
      raw[full] += r;
    }
  }
}

Correlator Engine::compute(int g, int n, int order) {
  std::map<SlotKey, Rational> cur;
  for (int b = 0; b < curve_.branchCount(); ++b)
    accumulateBranch(g, n, b, order, cur);

  const int nb = curve_.branchCount();
  std::vector<int> caps(static_cast<size_t>(nb));
  for (int i = 0; i < nb; ++i) caps[static_cast<size_t>(i)] = kCap(g, n, i);

  // Resolve principal-part tags position by position.  Grouping over the
  // remaining slots keeps every solve inside the span of the basis: the full
  // tensor is a linear combination of pure basis products, so each slice is.
  for (int pos = 0; pos < n; ++pos) {
    struct Group {
      std::vector<LaurentSeries> pp;
      std::map<BasisIndex, Rational> direct;
    };
    std::map<SlotKey, Group> groups;
    for (const auto& [k, c] : cur) {
      SlotKey rest = k;
      rest.erase(rest.begin() + pos);
      auto [it, inserted] = groups.emplace(std::move(rest), Group{});
      Group& grp = it->second;
      if (inserted) {
        for (int j = 0; j < nb; ++j)
          grp.pp.push_back(LaurentSeries::zero(curve_.alpha(j), 0));
      }
      const Slot& s = k[static_cast<size_t>(pos)];
      if (s.pending) {
        grp.pp[static_cast<size_t>(s.branch)].addCoeff(s.exponent, c);
      } else {
        grp.direct[BasisIndex{s.branch, s.k}] += c;
      }
    }
    std::map<SlotKey, Rational> next;
    for (auto& [rest, grp] : groups) {
      std::map<BasisIndex, Rational> sol = basis_.decompose(grp.pp, caps);
      for (const auto& [bi, c] : grp.direct) sol[bi] += c;
      for (const auto& [bi, c] : sol) {
        if (c == 0) continue;
        SlotKey nk = rest;
        nk.insert(nk.begin() + pos, Slot::resolved(bi));
        next[nk] += c;
      }
    }
    cur.swap(next);
  }

  // All slots resolved: collect ordered entries and verify full symmetry.
  std::map<std::vector<BasisIndex>, Rational> ordered;
  for (const auto& [k, c] : cur) {
    if (c == 0) continue;
    std::vector<BasisIndex> ok;
    ok.reserve(k.size());
    for (const Slot& s : k) ok.push_back(BasisIndex{s.branch, s.k});
    ordered[ok] += c;
  }
  Correlator out(g, n);
  std::set<std::vector<BasisIndex>> seen;
  for (const auto& [ok, c] : ordered) {
    std::vector<BasisIndex> sk = ok;
    std::sort(sk.begin(), sk.end());
    if (!seen.insert(sk).second) continue;
    std::vector<BasisIndex> perm = sk;
    do {
      auto it = ordered.find(perm);
      if (it == ordered.end() || it->second != c) {
        throw MathError("recursion output is not a symmetric tensor");
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    out.setChecked(sk, c);
  }
  return out;
}

const Rational& Engine::phiPairing(const BasisIndex& idx) {
  std::scoped_lock lock(mu_);
  auto it = phiCache_.find(idx);
  if (it != phiCache_.end()) return it->second;
  Rational d(0);
  const int order = 2 * idx.k + 10;
  for (int j = 0; j < curve_.branchCount(); ++j) {
    LaurentSeries v = basis_.seriesAt(idx.branch, idx.k, j, order);
    LaurentSeries p = v.primitive();  // throws if a residue obstructs it
    YdxSeries w = curve_.ydx(j, order);
    d += productResidue(p, w.regular);
    // The symbolic log(alpha) multiplies a residue that must vanish.
    if (productResidue(p, w.logConst) != 0)
      throw MathError("phi pairing: log-constant residue does not vanish");
  }
  return phiCache_.emplace(idx, d).first->second;
}

Correlator Engine::phiContraction(int g, int n) {
  const Correlator& big = correlator(g, n + 1);
  Correlator out(g, n);
  for (const auto& [key, c] : big.terms()) {
    std::vector<BasisIndex> distinct;
    for (const BasisIndex& e : key) {
      if (distinct.empty() || !(distinct.back() == e)) distinct.push_back(e);
    }
    for (const BasisIndex& e : distinct) {
      std::vector<BasisIndex> rest;
      bool removed = false;
      for (const BasisIndex& f : key) {
        if (!removed && f == e) {
          removed = true;
          continue;
        }
        rest.push_back(f);
      }
      out.add(rest, c * phiPairing(e));
    }
  }
  return out;
}

Rational Engine::freeEnergy(int g) {
  if (g < 2) throw MathError("freeEnergy: needs g >= 2");
  Correlator contracted = phiContraction(g, 0);
  return contracted.coeff({}) / Rational(2 - 2 * g);
}

}  // namespace trec
