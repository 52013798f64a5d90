#include "trec/rational.hpp"

#include <mutex>

namespace trec {

Rational parseRational(const std::string& text) {
  if (text.empty()) throw MathError("parseRational: empty string");
  mpq_class value;
  if (value.set_str(text, 10) != 0)
    throw MathError("parseRational: malformed rational '" + text + "'");
  if (value.get_den() == 0)
    throw MathError("parseRational: zero denominator in '" + text + "'");
  value.canonicalize();
  return value;
}

std::string ratString(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational ratPow(const Rational& value, long exponent) {
  if (exponent == 0) return 1;
  if (value == 0) {
    if (exponent < 0) throw MathError("ratPow: negative power of zero");
    return 0;
  }
  Rational base = exponent < 0 ? Rational(1) / value : value;
  unsigned long k = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
  Rational result = 1;
  while (k > 0) {
    if (k & 1) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

Rational factorial(long n) {
  if (n < 0) throw MathError("factorial: negative argument");
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(f);
}

Rational binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return Rational(b);
}

Rational oddDoubleFactorial(long m) {
  if (m >= 0) {
    Rational p = 1;
    for (long j = 1; j <= m; ++j) p *= 2 * j - 1;
    return p;
  }
  // Downward extension: (2m-1)!! = (2m+1)!!/(2m+1).
  Rational p = 1;
  for (long j = 0; j > m; --j) {
    p /= 2 * j - 1;
  }
  return p;
}

namespace {
std::vector<Rational>& bernoulliCache() {
  static std::vector<Rational> cache{Rational(1)};
  return cache;
}
std::mutex bernoulliMutex;
}  // namespace

Rational bernoulli(long n) {
  if (n < 0) throw MathError("bernoulli: negative index");
  std::lock_guard<std::mutex> lock(bernoulliMutex);
  auto& cache = bernoulliCache();
  // sum_{k=0}^{n} C(n+1,k) B_k = 0 for n >= 1, so
  // B_n = -1/(n+1) * sum_{k<n} C(n+1,k) B_k.  Gives B_1 = -1/2.
  while (static_cast<long>(cache.size()) <= n) {
    long m = static_cast<long>(cache.size());
    Rational sum = 0;
    for (long k = 0; k < m; ++k) sum += binomial(m + 1, k) * cache[k];
    cache.push_back(-sum / (m + 1));
  }
  return cache[n];
}

Rational harmonic(long d) {
  if (d < 0) throw MathError("harmonic: negative index");
  Rational h = 0;
  for (long j = 1; j <= d; ++j) h += Rational(1, j);
  return h;
}

double toDouble(const Rational& value) { return value.get_d(); }

}  // namespace trec
