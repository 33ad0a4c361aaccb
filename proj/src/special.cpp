#include "fv/special.hpp"

#include <mutex>
#include <stdexcept>
#include <vector>

namespace fv {

Rational harmonic(int n) {
  if (n < 0) throw std::invalid_argument("harmonic: negative index");
  Rational h;
  for (int j = 1; j <= n; ++j) h += Rational(1, j);
  return h;
}

Rational factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial: negative argument");
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(mpq_class(f));
}

Rational binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return Rational();
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(mpq_class(c));
}

Rational bernoulli(int n) {
  if (n < 0) throw std::invalid_argument("bernoulli: negative index");
  static std::mutex mu;
  static std::vector<Rational> cache{Rational(1)};
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<int>(cache.size()) <= n) {
    const int m = static_cast<int>(cache.size());
    Rational s;
    for (int k = 0; k < m; ++k) s += binomial(m + 1, k) * cache[k];
    cache.push_back(-s / Rational(m + 1));
  }
  return cache[n];
}

}  // namespace fv
