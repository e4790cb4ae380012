#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "ridgelab/exact.hpp"
#include "ridgelab/imn.hpp"

using namespace ridgelab;

TEST_CASE("gamma at half-integers") {
  CHECK(gamma_half(0, 1).coeff == 1);
  CHECK(gamma_half(0, -1).coeff == 1);
  CHECK(gamma_half(1, 1).coeff == mpq_class(1, 2));
  CHECK(gamma_half(1, -1).coeff == -2);
  CHECK(gamma_half(2, 1).coeff == mpq_class(3, 4));
  CHECK(gamma_half(2, -1).coeff == mpq_class(4, 3));
  for (long m = 0; m <= 10; ++m) {
    CHECK(gamma_half(m, 1).value() == doctest::Approx(std::tgamma(0.5 + m)).epsilon(1e-12));
    CHECK(gamma_half(m, -1).value() == doctest::Approx(std::tgamma(0.5 - m)).epsilon(1e-12));
  }
}

TEST_CASE("generalised binomial") {
  CHECK(binom_real(mpq_class(7, 3), 0) == 1);
  CHECK(binom_real(mpq_class(1, 2), 2) == mpq_class(-1, 8));
  CHECK(binom_real(5, 2) == 10);
  std::mt19937_64 g(17);
  for (int it = 0; it < 200; ++it) {
    mpq_class a(long(g() % 41) - 20, long(g() % 7) + 1);
    a.canonicalize();
    long n = long(g() % 11);
    mpq_class lhs = binom_real(a, n);
    mpq_class rhs = binom_real(n - a - 1, n);
    if (n % 2) rhs = -rhs;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("Bell values for sqrt(c^2 - y)") {
  mpq_class c(3, 2);
  CHECK(bell_sqrt(1, 1, c) == -1 / (2 * c));
  CHECK(bell_sqrt(2, 1, c) == mpq_class(-1) / (4 * c * c * c));
  for (long n = 1; n <= 6; ++n) {
    mpq_class p = 1;
    for (long i = 0; i < n; ++i) p *= -2 * c;
    CHECK(bell_sqrt(n, n, c) == 1 / p);
  }
  // B_{n,1} is the n-th derivative itself; B_{3,2} = 3 y1 y2
  CHECK(bell_sqrt(3, 2, c) == 3 * bell_sqrt(1, 1, c) * bell_sqrt(2, 1, c));
  double cd = 1.5, h = 1e-3;
  auto f = [&](double y) { return std::sqrt(cd * cd - y); };
  double d2 = (f(h) - 2 * f(0) + f(-h)) / (h * h);
  CHECK(d2 == doctest::Approx(bell_sqrt(2, 1, c).get_d()).epsilon(1e-5));
  CHECK_THROWS_AS(bell_sqrt(2, 3, c), IndexError);
  CHECK_THROWS_AS(bell_sqrt(2, 0, c), IndexError);
}

TEST_CASE("single factor integral") {
  using std::numbers::pi;
  CHECK(single_factor_integral(1, 1, 1) == doctest::Approx(pi).epsilon(1e-15));
  CHECK(single_factor_integral(2, 1, 1) == doctest::Approx(pi / 2).epsilon(1e-15));
  CHECK(single_factor_integral(1, 2, 3) == doctest::Approx(pi / 6).epsilon(1e-15));
  CHECK_THROWS_AS(single_factor_integral(1, 0, 1), std::domain_error);
  for (int m = 1; m <= 6; ++m) {
    double a = 0.7, c = 1.3;
    auto q = integrate_real_line([&](double x) { return 1.0 / std::pow(a * a * x * x + c * c, m); }, c / a, {0.0}, 1e-13);
    CHECK(single_factor_integral(m, a, c) == doctest::Approx(q.value).epsilon(1e-11));
  }
}
