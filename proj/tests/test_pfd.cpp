#include <cmath>
#include <random>

#include "doctest.h"
#include "ridgelab/pfd.hpp"

using namespace ridgelab;

namespace {
mpq_class rq(std::mt19937_64& g) {
  mpq_class r(long(g() % 19) + 1, long(g() % 7) + 1);
  r.canonicalize();
  return r;
}
}  // namespace

TEST_CASE("pfd initial values") {
  auto P = pfd_tables(1, 1, {1, 1, 1, 1, 1, 1});
  CHECK(P.r11 == 3.0);
  CHECK(P.u[1][1] == 2.0);
  auto Q = pfd_tables(3, 3, {3, 3, 0.3, 2.0, 0.7, 1.9});
  CHECK(Q.u[1][1] == 2.0);
  CHECK(Q.s(2, 2) == -Q.u[2][2]);
}

TEST_CASE("pfd identities exact") {
  std::mt19937_64 g(31);
  for (int it = 0; it < 10; ++it) {
    mpq_class a = rq(g), b = rq(g) - 5, c = rq(g), d = rq(g);
    auto P = pfd_tables_exact(5, 5, a, b, c, d);
    for (int l = 1; l <= 5; ++l)
      for (int k = 1; k <= 5; ++k) {
        CHECK(P.r[l][k] + P.t[l][k] - 2 * a * a * b * b * P.u[l][k] == 0);
        CHECK(P.s(l, k) == -P.u[l][k]);
      }
    for (int m = 1; m <= 4; ++m)
      for (int n = 1; n <= 4; ++n) CHECK(pfd_residual_exact(m, n, a, b, c, d, rq(g) - 7) == 0);
  }
}

TEST_CASE("pfd residual in floating point") {
  CHECK(pfd_residual(1, 1, {1, 1, 1, 1, 1, 1}, 0.0) <= 1e-12);
  std::mt19937_64 g(37);
  std::uniform_real_distribution<double> u(0.2, 3.0), x(-4, 4);
  for (int it = 0; it < 50; ++it) {
    int m = 1 + int(g() % 5), n = 1 + int(g() % 5);
    ImnParams p{m, n, u(g), x(g), u(g), u(g)};
    CHECK(pfd_residual(m, n, p, x(g)) <= 1e-9);
  }
  for (int m = 1; m <= 5; ++m)
    for (int n = 1; n <= 5; ++n) CHECK(pfd_residual(m, n, {m, n, 1.3, 0.0, 0.8, 1.1}, 0.6) <= 1e-12);
}

TEST_CASE("pfd generating functions") {
  std::mt19937_64 g(41);
  for (int it = 0; it < 3; ++it) {
    mpq_class a = rq(g), b = rq(g) - 3, c = rq(g), d = rq(g);
    CHECK(pfd_genfunc_check(8, a, b, c, d) == 0);
  }
}

TEST_CASE("two-term recursion generating function") {
  std::array<ExactScalar, 4> I{1, 0, 0, 1};
  auto G = recurrence_genfunc(I, 1, 0, 0, 10);
  for (int k = 0; k <= 10; ++k) {
    CHECK(G.g[k] == 1);
    CHECK(G.h[k] == 0);
  }
  std::mt19937_64 g(43);
  for (int it = 0; it < 20; ++it) {
    std::array<ExactScalar, 4> M{rq(g) - 5, rq(g) - 5, rq(g) - 5, rq(g) - 5};
    int i = int(g() % 3);
    auto A = recurrence_iterate(M, rq(g), rq(g), i, 12);
    auto B = recurrence_genfunc(M, A.g[i], A.h[i], i, 12);
    CHECK(A.g == B.g);
    CHECK(A.h == B.h);
  }
  // t^1_k and u^1_k follow the matrix recursion [[t11, -2 a^4 b^2 d^2], [2, t11]]
  mpq_class a(3, 2), b(-2, 3), c(5, 4), d(7, 5);
  auto P = pfd_tables_exact(8, 1, a, b, c, d);
  std::array<ExactScalar, 4> M{P.t11, -2 * a * a * a * a * b * b * d * d, 2, P.t11};
  auto T = recurrence_genfunc(M, P.t11, 2, 1, 8);
  for (int k = 1; k <= 8; ++k) {
    CHECK(T.g[k] == P.t[1][k]);
    CHECK(T.h[k] == P.u[1][k]);
  }
  CHECK(M[0] * M[3] - M[1] * M[2] == P.Delta);
}
