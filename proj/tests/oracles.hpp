#pragma once

// Independent reference computations used only by the test suite.  Each one
// is implemented from a different formula/algorithm than the library code it
// checks, so agreement is meaningful.

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "trec/rational.hpp"

namespace testoracle {

using trec::Rational;

// Bernoulli numbers via the Akiyama–Tanigawa triangle.  Note: this algorithm
// produces the B_1 = +1/2 convention; the library uses B_1 = -1/2, so the two
// agree except for a sign at n = 1.
inline Rational bernoulliAT(long n) {
  std::vector<Rational> a(n + 1);
  Rational result = 0;
  for (long m = 0; m <= n; ++m) {
    a[m] = Rational(1, m + 1);
    for (long j = m; j >= 1; --j) a[j - 1] = Rational(j) * (a[j - 1] - a[j]);
    result = a[0];
  }
  return result;
}

// Odd central binomial coefficients C(2m, m), frozen.
inline const std::vector<long>& centralBinomial() {
  static const std::vector<long> values{1, 2, 6, 20, 70, 252, 924, 3432, 12870};
  return values;
}

inline Rational dfOdd(long m) { return trec::oddDoubleFactorial(m); }

// psi-class intersection numbers <tau_{d_1}...tau_{d_n}>_g on the moduli of
// curves, via the Virasoro/KdV recursion on the largest index, seeded with
// <tau_0^3>_0 = 1 and <tau_1>_1 = 1/24.
class PsiIntersections {
public:
  Rational value(long g, std::vector<long> d) {
    if (g < 0) return 0;
    long n = static_cast<long>(d.size());
    if (n < 1) return 0;
    long sum = std::accumulate(d.begin(), d.end(), 0L);
    if (sum != 3 * g - 3 + n) return 0;          // dimension constraint
    if (3 * g - 3 + n < 0) return 0;             // unstable
    if (g == 0 && n < 3) return 0;
    if (g == 1 && n == 1) return Rational(1, 24);
    if (g == 0 && n == 3) return 1;
    std::sort(d.begin(), d.end(), std::greater<long>());
    auto found = memo_.find({g, d});
    if (found != memo_.end()) return found->second;

    long d1 = d[0];
    std::vector<long> rest(d.begin() + 1, d.end());
    long m = static_cast<long>(rest.size());
    Rational rhs = 0;
    // join the distinguished insertion with another one
    for (long j = 0; j < m; ++j) {
      std::vector<long> nd;
      for (long i = 0; i < m; ++i)
        if (i != j) nd.push_back(rest[i]);
      nd.push_back(d1 + rest[j] - 1);
      rhs += dfOdd(d1 + rest[j]) / dfOdd(rest[j]) * value(g, nd);
    }
    // split off a pair of insertions
    for (long a = 0; a + 2 <= d1; ++a) {
      long b = d1 - 2 - a;
      Rational coef = dfOdd(a + 1) * dfOdd(b + 1) / 2;
      std::vector<long> joined = rest;
      joined.push_back(a);
      joined.push_back(b);
      rhs += coef * value(g - 1, joined);
      for (long mask = 0; mask < (1L << m); ++mask) {
        std::vector<long> left{a}, right{b};
        for (long i = 0; i < m; ++i)
          ((mask >> i) & 1 ? left : right).push_back(rest[i]);
        for (long g1 = 0; g1 <= g; ++g1)
          rhs += coef * value(g1, left) * value(g - g1, right);
      }
    }
    Rational result = rhs / dfOdd(d1 + 1);
    memo_[{g, d}] = result;
    return result;
  }

private:
  std::map<std::pair<long, std::vector<long>>, Rational> memo_;
};

inline Rational psiIntersection(long g, std::vector<long> d) {
  static PsiIntersections table;
  return table.value(g, std::move(d));
}

}  // namespace testoracle
