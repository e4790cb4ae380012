#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "ridgelab/imn.hpp"

using namespace ridgelab;
using std::numbers::pi;

TEST_CASE("cmn coefficients") {
  CHECK(cmn_coefficient(1, 1, 1, 0) == 1);
  CHECK(cmn_coefficient(1, 1, 0, 1) == 1);
  CHECK(cmn_coefficient(2, 2, 0, 0) == 0);
  CHECK(cmn_coefficient_long(1, 1, 1, 0) == 1);
  // not integers in general
  CHECK(cmn_coefficient(1, 2, 1, 0) == mpq_class(1, 2));
  CHECK(cmn_coefficient(2, 2, 2, 3) == mpq_class(13, 2));
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n) {
      const int K = 2 * (m + n) - 3;
      for (int i = 0; i <= K + 2; ++i)
        for (int j = 0; j <= K + 2; ++j) {
          auto v = cmn_coefficient(m, n, i, j);
          if ((i + j) % 2 == 0) CHECK(v == 0);
          if (i + j > K) CHECK(cmn_coefficient_long(m, n, i, j) == 0);
          CHECK((v != 0) == cmn_pattern(m, n, i, j));
          CHECK(v == cmn_coefficient_long(m, n, i, j));
        }
    }
}

TEST_CASE("positivity scan") {
  auto r = positivity_scan(2, 2);
  CHECK(r.negatives.empty());
  CHECK(r.nonzero == r.pattern_count);
  auto r11 = positivity_scan(1, 1);
  CHECK(r11.nonzero == 2);
  CHECK(cmn_table(1, 1).at(1, 0) == 1);
  CHECK(cmn_table(1, 1).at(0, 1) == 1);
}

TEST_CASE("closed form special cases") {
  CHECK(imn_closed_form({1, 1, 1, 0, 1, 1}) == doctest::Approx(pi / 2).epsilon(1e-15));
  double a = 0.7, b = -1.3, c = 0.4, d = 2.2;
  double want = pi * (c + a * d) / (c * d * ((c + a * d) * (c + a * d) + a * a * b * b));
  CHECK(imn_closed_form({1, 1, a, b, c, d}) == doctest::Approx(want).epsilon(1e-14));
  for (int m = 1; m <= 5; ++m)
    for (int n = 1; n <= 5; ++n) {
      double cc = 0.8, dd = 1.7;
      double w = std::pow(cc, -2 * m) * pi / std::pow(dd, 2 * n - 1) *
                 binom_int(2 * n - 2, n - 1).get_d() / std::ldexp(1.0, 2 * (n - 1));
      CHECK(imn_closed_form({m, n, 0.0, 3.0, cc, dd}) == doctest::Approx(w).epsilon(1e-13));
    }
}

TEST_CASE("quadrature oracle") {
  CHECK(imn_quadrature({1, 1, 1, 0, 1, 1}, 1e-12).value == doctest::Approx(pi / 2).epsilon(1e-11));
  CHECK(imn_quadrature({1, 2, 0, 0, 1, 1}, 1e-12).value == doctest::Approx(pi / 2).epsilon(1e-11));
  CHECK_THROWS_AS(imn_quadrature({1, 1, 1, 0, 1, 1}, 1e-14), std::invalid_argument);
  std::mt19937_64 g(23);
  std::uniform_real_distribution<double> u(0, 1);
  for (int it = 0; it < 40; ++it) {
    ImnParams p{1 + int(g() % 5), 1 + int(g() % 5), 0.1 + 3 * u(g), -5 + 10 * u(g), 0.2 + 2 * u(g), 0.2 + 2 * u(g)};
    double q = imn_quadrature(p, 1e-10).value;
    CHECK(imn_closed_form(p) == doctest::Approx(q).epsilon(1e-8));
  }
}

TEST_CASE("generating series") {
  ImnParams p{1, 1, 0.7, 1.1, 0.9, 1.3};
  CHECK(imn_generating_series(p) == doctest::Approx(imn_closed_form(p)).epsilon(1e-13));
  auto tab = imn_series_table(6, 6, 2.5, -0.3, 0.05, 3.0);
  for (int m = 1; m <= 6; ++m)
    for (int n = 1; n <= 6; ++n) {
      double cf = imn_closed_form({m, n, 2.5, -0.3, 0.05, 3.0});
      CHECK(std::abs(tab[m - 1][n - 1] - cf) <= 1e-11 * std::abs(cf));
    }
  // decreasing along b -> infinity
  double prev = imn_generating_series({2, 3, 1, 0, 1, 1});
  for (double b = 1; b < 1e4; b *= 3) {
    double v = imn_generating_series({2, 3, 1, b, 1, 1});
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("bounds") {
  CHECK(upper_bound({1, 1, 1, 0, 1, 1}, BoundVariant::simple) == doctest::Approx(1.0));
  CHECK(grafakos_bound({1, 1, 1, 0, 1, 1}) == doctest::Approx(2.0));
  CHECK(imn_closed_form({1, 1, 1, 0, 1, 1}) / upper_bound({1, 1, 1, 0, 1, 1}, BoundVariant::simple) ==
        doctest::Approx(pi / 2));
  std::mt19937_64 g(29);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int it = 0; it < 1000; ++it) {
    ImnParams p{1 + int(g() % 6), 1 + int(g() % 6), std::pow(10.0, u(g)), 10 * u(g), std::pow(10.0, u(g)), std::pow(10.0, u(g))};
    double best = upper_bound(p, BoundVariant::best), simple = upper_bound(p, BoundVariant::simple);
    CHECK(best <= simple);
    CHECK(upper_bound(p, BoundVariant::best, true) <= best);
    CHECK(std::isfinite(grafakos_bound(p)));
    CHECK(grafakos_bound(p) > 0);
  }
  // a >> c ~ d: the two-term bound is far below the comparison bound
  for (double a = 10; a <= 1e4; a *= 10) {
    ImnParams p{3, 2, a, 0.5, 1.0, 1.0};
    CHECK(upper_bound(p, BoundVariant::best) < grafakos_bound(p));
  }
}

TEST_CASE("convolution corollary") {
  auto k1 = conv_bound_check(1, 2, 2, 0.7, 1.2, {1.5});
  CHECK(k1.lhs == doctest::Approx(imn_closed_form({2, 2, 1.0, 1.5, 0.7, 1.2})).epsilon(1e-9));
  auto a = conv_bound_check(2, 2, 2, 1.0, 1.0, {0.0, 0.0});
  auto b = conv_bound_check(2, 2, 2, 2.0, 2.0, {0.0, 0.0});
  // the printed right-hand side is one power short of scale invariance
  CHECK((b.lhs / b.rhs) / (a.lhs / a.rhs) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK((b.lhs / b.rhs_homogeneous) / (a.lhs / a.rhs_homogeneous) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(k1.rhs_homogeneous == doctest::Approx(upper_bound({2, 2, 1.0, 1.5, 0.7, 1.2}, BoundVariant::simple)));
  auto p = conv_bound_check(3, 2, 2, 0.5, 1.1, {0.3, -0.4, 1.0});
  auto q = conv_bound_check(3, 2, 2, 0.5, 1.1, {-0.3, 0.4, -1.0});
  CHECK(p.lhs == doctest::Approx(q.lhs).epsilon(1e-10));
  CHECK(p.lhs <= 10 * p.rhs);
  CHECK_THROWS_AS(conv_bound_check(4, 2, 2, 1, 1, {0, 0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(conv_bound_check(3, 1, 2, 1, 1, {0, 0, 0}), std::invalid_argument);
}
