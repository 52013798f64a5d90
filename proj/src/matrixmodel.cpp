#include "trec/matrixmodel.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cassert>
#include <vector>

#include "trec/common.hpp"
#include "trec/ratfunc.hpp"

namespace trec {

Rational flatMoment(int k) {
  if (k < 0) throw MathError("flatMoment: negative power");
  if (k % 2 == 1) return 0;
  // [x^{k+1}/(k+1)] from -2 to 2.
  return Rational(Rational(2) * ratPow(2, k + 1) / (k + 1));
}

Rational flatInner(const Poly& f, const Poly& g) {
  Rational sum = 0;
  for (int i = 0; i <= f.degree(); ++i) {
    if (f.coeff(i) == 0) continue;
    for (int j = 0; j <= g.degree(); ++j) {
      if (g.coeff(j) == 0 || (i + j) % 2 == 1) continue;
      sum += f.coeff(i) * g.coeff(j) * flatMoment(i + j);
    }
  }
  return Rational(sum);
}

OrthoSystem orthoSystem(int nmax) {
  if (nmax < 0) throw MathError("orthoSystem: negative degree");
  OrthoSystem sys;
  for (int k = 0; k <= nmax; ++k) {
    Poly cur = Poly::monomial(k);
    for (int j = 0; j < k; ++j) {
      Rational c = Rational(flatInner(cur, sys.p[j]) / sys.normSq[j]);
      if (c != 0) cur -= sys.p[j] * c;
    }
    sys.normSq.push_back(flatInner(cur, cur));
    sys.p.push_back(std::move(cur));
  }
  return sys;
}

Rational normSqClosed(int n) {
  if (n < 0) throw MathError("normSqClosed: negative index");
  Rational num = Rational(ratPow(2, 4 * n + 2) * ratPow(factorial(n), 4));
  Rational den = Rational(Rational(2 * n + 1) * factorial(2 * n) * factorial(2 * n));
  return Rational(num / den);
}

Rational partitionFunction(int N) {
  if (N < 0) throw MathError("partitionFunction: negative size");
  Rational z = 1;
  for (int j = 0; j < N; ++j) z *= normSqClosed(j);
  return Rational(z);
}

namespace {

// Coefficients modulo sigma^3: exact second-order perturbation theory for
// the weight exp(sigma x) dx.
struct Jet {
  Rational a = 0, b = 0, c = 0;  // a + b sigma + c sigma^2

  Jet() = default;
  Jet(Rational a0, Rational a1, Rational a2)
      : a(std::move(a0)), b(std::move(a1)), c(std::move(a2)) {}
  explicit Jet(const Rational& v) : a(v) {}

  bool operator==(const Jet& o) const = default;

  Jet operator+(const Jet& o) const {
    return {Rational(a + o.a), Rational(b + o.b), Rational(c + o.c)};
  }
  Jet operator-(const Jet& o) const {
    return {Rational(a - o.a), Rational(b - o.b), Rational(c - o.c)};
  }
  Jet operator*(const Jet& o) const {
    return {Rational(a * o.a), Rational(a * o.b + b * o.a),
            Rational(a * o.c + b * o.b + c * o.a)};
  }
  Jet inverse() const {
    if (a == 0) throw MathError("Jet: inverting a non-unit");
    Rational ia = Rational(1 / a);
    return {ia, Rational(-b * ia * ia),
            Rational((b * b / a - c) * ia * ia)};
  }
  Jet operator/(const Jet& o) const { return *this * o.inverse(); }
  Jet& operator+=(const Jet& o) { return *this = *this + o; }
  Jet& operator-=(const Jet& o) { return *this = *this - o; }
};

// Perturbed moment: integral of x^m exp(sigma x) dx over [-2, 2] mod
// sigma^3.
Jet momentJet(int m) {
  return {flatMoment(m), flatMoment(m + 1), Rational(flatMoment(m + 2) / 2)};
}

using JetPoly = std::vector<Jet>;  // coefficient of x^i at index i

Jet jetInner(const JetPoly& f, const JetPoly& g) {
  Jet sum;
  for (size_t i = 0; i < f.size(); ++i)
    for (size_t j = 0; j < g.size(); ++j)
      sum += f[i] * g[j] * momentJet(static_cast<int>(i + j));
  return sum;
}

// Monic orthogonal polynomials and squared norms for the perturbed weight,
// indices 0..nmax.
void orthoJets(int nmax, std::vector<JetPoly>& p, std::vector<Jet>& H) {
  for (int k = 0; k <= nmax; ++k) {
    JetPoly cur(k + 1);
    cur[k] = Jet(Rational(1));
    for (int j = 0; j < k; ++j) {
      Jet c = jetInner(cur, p[j]) / H[j];
      for (size_t i = 0; i < p[j].size(); ++i) cur[i] -= c * p[j][i];
    }
    H.push_back(jetInner(cur, cur));
    p.push_back(std::move(cur));
  }
}

// d^2/dsigma^2 log H at sigma = 0 for an even jet (linear part vanishes by
// the x -> -x symmetry of the interval).
Rational secondLogDerivative(const Jet& h) {
  if (h.b != 0) throw MathError("secondLogDerivative: odd part present");
  return Rational(2 * h.c / h.a);
}

}  // namespace

TodaNormReport todaNormIdentity(int N) {
  if (N < 1) throw MathError("todaNormIdentity: N must be positive");
  TodaNormReport rep;
  rep.N = N;
  std::vector<JetPoly> p;
  std::vector<Jet> H;
  orthoJets(N, p, H);

  // a_k = H_k/H_{k-1} at sigma = 0, with a_0 = 0.
  auto ratio = [&](int k) {
    return k == 0 ? Rational(0) : Rational(H[k].a / H[k - 1].a);
  };

  rep.flow = true;
  for (int k = 0; k < N && rep.flow; ++k) {
    Rational lhs = secondLogDerivative(H[k]);
    Rational rhs = Rational(ratio(k + 1) - ratio(k));
    if (lhs != rhs) {
      rep.flow = false;
      rep.detail = "flow identity fails at k=" + std::to_string(k) + ": " +
                   ratString(lhs) + " vs " + ratString(rhs);
    }
  }

  rep.ratioForm = true;
  for (int k = 2; k < N && rep.ratioForm; ++k) {
    Rational lhs =
        Rational(secondLogDerivative(H[k]) - secondLogDerivative(H[k - 1]));
    Rational rhs =
        Rational(ratio(k + 1) + ratio(k - 1) - Rational(2) * ratio(k));
    if (lhs != rhs) {
      rep.ratioForm = false;
      rep.detail = "ratio identity fails at k=" + std::to_string(k) + ": " +
                   ratString(lhs) + " vs " + ratString(rhs);
    }
  }

  Rational total = 0;
  for (int k = 0; k < N; ++k) total += secondLogDerivative(H[k]);
  rep.telescoped = (Rational(total) == ratio(N));
  if (!rep.telescoped && rep.detail.empty())
    rep.detail = "telescoped sum " + ratString(Rational(total)) + " vs " +
                 ratString(ratio(N));

  // Z(N) from the same Gram-Schmidt run.
  auto z = [&](int n) {
    Rational prod = 1;
    for (int j = 0; j < n; ++j) prod *= H[j].a;
    return Rational(prod);
  };
  Rational rhs = Rational(z(N + 1) * z(N - 1) / (z(N) * z(N)));
  rep.todaEquation = (Rational(total) == rhs);
  if (!rep.todaEquation && rep.detail.empty())
    rep.detail = "lattice equation " + ratString(Rational(total)) + " vs " +
                 ratString(rhs);
  return rep;
}

namespace {

// Series at infinity for a polynomial: x^i contributes to exponent -i.
LaurentSeries polyAtInfinity(const Poly& f, int order) {
  LaurentSeries s = LaurentSeries::zero(ExpansionPoint::infinity(), order);
  for (int i = 0; i <= f.degree(); ++i)
    if (f.coeff(i) != 0) s.addCoeff(-i, f.coeff(i));
  return s;
}

// d/dx of a series at infinity (chart u = 1/x, d/dx = -u^2 d/du).
LaurentSeries ddxAtInfinity(const LaurentSeries& f) {
  return -(f.derivative().shifted(2));
}

}  // namespace

LaurentSeries secondKindSeries(int n, int order) {
  if (n < 0 || order < 1) throw MathError("secondKindSeries: bad arguments");
  // Margin: each recurrence step multiplies by x, losing one order at the
  // top of the window.
  int window = order + n;
  LaurentSeries q0 = LaurentSeries::zero(ExpansionPoint::infinity(), window);
  for (int m = 0; m + 1 < window; m += 2) q0.addCoeff(m + 1, flatMoment(m));
  if (n == 0) return q0.truncated(order);
  LaurentSeries q1 =
      q0.shifted(-1) -
      LaurentSeries::constant(ExpansionPoint::infinity(), flatMoment(0),
                              window - 1);
  for (int j = 1; j < n; ++j) {
    long jj = 4L * j * j;
    LaurentSeries next = q1.shifted(-1) - q0.truncated(q1.order() - 1) *
                                              rat(jj, jj - 1);
    q0 = std::move(q1);
    q1 = std::move(next);
  }
  return q1.truncated(order);
}

bool wronskianMatches(int n, int order) {
  OrthoSystem sys = orthoSystem(n);
  LaurentSeries qn = secondKindSeries(n, order + 1);
  LaurentSeries w =
      polyAtInfinity(sys.p[n], order + 1) * ddxAtInfinity(qn) -
      polyAtInfinity(sys.p[n].derivative(), order + 1) * qn;
  RatFunc target = RatFunc(Poly(Rational(Rational(2 * n + 1) * sys.normSq[n]))) /
                   RatFunc(Poly({4, 0, -1}));
  LaurentSeries t = target.expandAt(ExpansionPoint::infinity(), w.order());
  return (w - t).windowIsZero();
}

LaurentSeries finiteNOnePoint(int N, int order) {
  if (N < 1 || order < 1) throw MathError("finiteNOnePoint: bad arguments");
  OrthoSystem sys = orthoSystem(N);
  int window = order + N + 1;
  LaurentSeries qN = secondKindSeries(N, window);
  LaurentSeries qN1 = secondKindSeries(N - 1, window);
  LaurentSeries w = polyAtInfinity(sys.p[N - 1], window) * ddxAtInfinity(qN) -
                    polyAtInfinity(sys.p[N], window) * ddxAtInfinity(qN1);
  return (w * Rational(-N) / sys.normSq[N - 1]).truncated(order);
}

LaurentSeries finiteNOnePointDirect(int N, int order) {
  if (N < 1 || order < 1)
    throw MathError("finiteNOnePointDirect: bad arguments");
  OrthoSystem sys = orthoSystem(N - 1);
  LaurentSeries r = LaurentSeries::zero(ExpansionPoint::infinity(), order);
  for (int k = 0; k < N; ++k) {
    const Poly& pk = sys.p[k];
    for (int m = 0; m + 1 < order; ++m) {
      Rational c = flatInner(Poly::monomial(m) * pk, pk);
      if (c != 0) r.addCoeff(m + 1, Rational(c / sys.normSq[k]));
    }
  }
  return r * Rational(-N);
}

AsymptoticFit asymptoticFreeEnergies(int nMax) {
  if (nMax < 40) throw MathError("asymptoticFreeEnergies: nMax too small");
  using Big = boost::multiprecision::cpp_bin_float_100;

  // log H_j via the telescoping ratio H_j/H_{j-1} = 4j^2/(4j^2-1): only
  // logarithms of small integers are ever taken.
  std::vector<Big> logH(nMax);
  logH[0] = log(Big(4));
  for (int j = 1; j < nMax; ++j)
    logH[j] = logH[j - 1] + log(Big(4) * j * j) - log(Big(4) * j * j - 1);
  // L[M] = log Z(M) = sum_{j<M} log H_j.
  std::vector<Big> L(nMax + 1);
  for (int j = 0; j < nMax; ++j) L[j + 1] = L[j] + logH[j];

  // Centered third difference: annihilates constants and every polynomial
  // of degree <= 2 in N, and keeps even 1/N expansions even.
  auto d3 = [](auto&& f, int M) {
    return (f(M + 2) - 2 * f(M + 1) + 2 * f(M - 1) - f(M - 2)) / 2;
  };
  auto lSamp = [&](int M) { return L[M]; };
  auto logSamp = [](int M) { return log(Big(M)); };
  auto powSamp = [](int e) {
    return [e](int M) { return pow(Big(M), e); };
  };

  // Nodes for Richardson extrapolation in 1/M^2.
  std::vector<int> nodes;
  int step = std::max(10, nMax / 10);
  for (int i = 0; i < 5; ++i) nodes.push_back(nMax - 2 - i * step);
  if (nodes.back() < 20)
    throw MathError("asymptoticFreeEnergies: nMax too small for node set");

  // Polynomial extrapolation to h = 0 through the points (h_i, v_i).
  auto extrapolate = [](const std::vector<Big>& h, const std::vector<Big>& v) {
    Big sum = 0;
    for (size_t i = 0; i < h.size(); ++i) {
      Big w = 1;
      for (size_t j = 0; j < h.size(); ++j)
        if (j != i) w *= h[j] / (h[j] - h[i]);
      sum += v[i] * w;
    }
    return sum;
  };

  std::vector<Big> h, slopeV, f2V;
  for (int M : nodes) {
    h.push_back(Big(1) / (Big(M) * M));
    slopeV.push_back(d3(lSamp, M) / d3(logSamp, M));
    f2V.push_back((d3(lSamp, M) + d3(logSamp, M) / 4) / d3(powSamp(-2), M));
  }
  Big slope = extrapolate(h, slopeV);
  Big f2 = extrapolate(h, f2V);
  std::vector<Big> f3V;
  for (size_t i = 0; i < nodes.size(); ++i) {
    int M = nodes[i];
    Big rem = d3(lSamp, M) + d3(logSamp, M) / 4 - f2 * d3(powSamp(-2), M);
    f3V.push_back(rem / d3(powSamp(-4), M));
  }
  Big f3 = extrapolate(h, f3V);

  AsymptoticFit fit;
  fit.nMax = nMax;
  fit.slope = static_cast<double>(slope);
  fit.f2 = static_cast<double>(f2);
  fit.f3 = static_cast<double>(f3);
  return fit;
}

}  // namespace trec
