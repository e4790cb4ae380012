#include "ridgelab/exact.hpp"

#include <cmath>
#include <numbers>

namespace ridgelab {

mpz_class factorial(unsigned long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

mpz_class binom_int(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

ExactScalar binom_real(const ExactScalar& alpha, long n) {
  if (n < 0) return 0;
  ExactScalar r = 1;
  for (long i = 0; i < n; ++i) r *= alpha - i;
  r /= ExactScalar(factorial(n));
  r.canonicalize();
  return r;
}

double HalfGamma::value() const { return coeff.get_d() * std::sqrt(std::numbers::pi); }

HalfGamma gamma_half(long m, int sign) {
  if (m < 0) throw IndexError("gamma_half expects m >= 0");
  mpz_class f2m = factorial(2 * m), fm = factorial(m);
  mpz_class p4 = 1;
  mpz_mul_2exp(p4.get_mpz_t(), p4.get_mpz_t(), 2 * m);
  ExactScalar c;
  if (sign >= 0) {
    c = ExactScalar(f2m, p4 * fm);
  } else {
    c = ExactScalar(p4 * fm, f2m);
    if (m % 2) c = -c;
  }
  c.canonicalize();
  return {c};
}

ExactScalar bell_sqrt(long n, long k, const ExactScalar& c) {
  if (k < 1 || k > n) throw IndexError("bell_sqrt needs 1 <= k <= n");
  // (-2c)^{k-2n} (2n-k-1)! / ((k-1)! (n-k)!)
  ExactScalar base = -2 * c;
  long e = 2 * n - k;  // base^{-e}
  ExactScalar p = 1;
  for (long i = 0; i < e; ++i) p *= base;
  ExactScalar r = ExactScalar(factorial(2 * n - k - 1)) / (ExactScalar(factorial(k - 1)) * ExactScalar(factorial(n - k)));
  r /= p;
  r.canonicalize();
  return r;
}

ExactScalar exact_from_double(double x) {
  if (!std::isfinite(x)) throw std::domain_error("non-finite value has no exact rational");
  ExactScalar r;
  mpq_set_d(r.get_mpq_t(), x);
  return r;
}

}  // namespace ridgelab
