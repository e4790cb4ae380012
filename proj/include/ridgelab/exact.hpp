#pragma once
#include <gmpxx.h>

#include <stdexcept>

namespace ridgelab {

using ExactScalar = mpq_class;

class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

mpz_class factorial(unsigned long n);
mpz_class binom_int(long n, long k);  // 0 outside 0 <= k <= n

// alpha (alpha-1) ... (alpha-n+1) / n!
ExactScalar binom_real(const ExactScalar& alpha, long n);

// Gamma(1/2 + m) (sign > 0) or Gamma(1/2 - m) (sign < 0) as coeff * sqrt(pi)
struct HalfGamma {
  ExactScalar coeff;
  double value() const;
};
HalfGamma gamma_half(long m, int sign);

// Bell value B_{n,k} for the derivatives of sqrt(c^2 - y) at y = 0
ExactScalar bell_sqrt(long n, long k, const ExactScalar& c);

// exact rational from a finite double
ExactScalar exact_from_double(double x);

}  // namespace ridgelab
