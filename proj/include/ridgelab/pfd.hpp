#pragma once
#include <array>
#include <vector>

#include "ridgelab/exact.hpp"
#include "ridgelab/imn.hpp"

namespace ridgelab {

// Coefficients of the partial fraction decomposition of
// P_{m,n}(x) = 1/((a^2(x-b)^2+c^2)^m (x^2+d^2)^n).
// r[l][k], t[l][k], u[l][k] for 1 <= l <= n, 0 <= k <= m (k = 0 only seeds l = 1).
template <class T>
struct PfdCoeffTable {
  int m = 0, n = 0;
  T a, b, c, d;
  T Delta, delta_plus, delta_minus, q, r11, t11;
  std::vector<std::vector<T>> r, t, u;

  // s^l_k of the decomposition; always -u
  T s(int l, int k) const { return -u[l][k]; }
};

template <class T>
PfdCoeffTable<T> pfd_tables_t(int m, int n, const T& a, const T& b, const T& c, const T& d) {
  PfdCoeffTable<T> P;
  P.m = m;
  P.n = n;
  P.a = a;
  P.b = b;
  P.c = c;
  P.d = d;
  const T a2 = a * a, b2 = b * b, c2 = c * c, d2 = d * d;
  const T a2b2 = a2 * b2;
  P.delta_plus = (c + a * d) * (c + a * d) + a2b2;
  P.delta_minus = (c - a * d) * (c - a * d) + a2b2;
  P.Delta = P.delta_plus * P.delta_minus;
  P.q = a2b2 + a2 * d2 - c2;
  P.r11 = 3 * a2b2 + a2 * d2 - c2;
  P.t11 = a2b2 - a2 * d2 + c2;
  const T a4b2d2 = a2 * a2 * b2 * d2;
  const T zero = a - a;
  P.r.assign(n + 1, std::vector<T>(m + 1, zero));
  P.t = P.r;
  P.u = P.r;
  auto& r = P.r;
  auto& t = P.t;
  auto& u = P.u;
  r[1][0] = -1;
  t[1][0] = 1;
  u[1][0] = 0;
  if (m >= 1) {
    r[1][1] = P.r11;
    t[1][1] = P.t11;
    u[1][1] = 2;
  }
  for (int k = 2; k <= m; ++k) {
    r[1][k] = P.r11 * t[1][k - 1] + a2b2 * (a2b2 + c2) * u[1][1] * u[1][k - 1];
    t[1][k] = P.t11 * t[1][k - 1] - a4b2d2 * u[1][1] * u[1][k - 1];
    u[1][k] = u[1][1] * t[1][k - 1] + P.t11 * u[1][k - 1];
  }
  for (int l = 2; l <= n; ++l)
    for (int k = 1; k <= m; ++k) {
      T R = zero, Tt = zero, U = zero;
      for (int kp = 1; kp <= k; ++kp) {
        const T u1km = (k - kp >= 1) ? u[1][k - kp] : zero;
        R += r[1][k - kp + 1] * r[l - 1][kp] +
             a2b2 * (P.Delta * u1km - (a2b2 + c2) * u[1][k - kp + 1]) * u[l - 1][kp];
        Tt += t[1][k - kp + 1] * r[l - 1][kp] + a4b2d2 * u[1][k - kp + 1] * u[l - 1][kp];
        U += u[1][k - kp + 1] * r[l - 1][kp] - t[1][k - kp + 1] * u[l - 1][kp];
      }
      r[l][k] = R;
      t[l][k] = Tt;
      u[l][k] = U;
    }
  return P;
}

PfdCoeffTable<double> pfd_tables(int m, int n, const ImnParams& p);
PfdCoeffTable<ExactScalar> pfd_tables_exact(int m, int n, const ExactScalar& a, const ExactScalar& b,
                                            const ExactScalar& c, const ExactScalar& d);

// |P_{m,n}(x) - reassembled PFD(x)| / |P_{m,n}(x)|, tables and sums in `bits`-bit floating point
double pfd_residual(int m, int n, const ImnParams& p, double x, unsigned bits = 256);
// same identity evaluated in exact arithmetic; returns the exact residual
ExactScalar pfd_residual_exact(int m, int n, const ExactScalar& a, const ExactScalar& b,
                               const ExactScalar& c, const ExactScalar& d, const ExactScalar& x);

// Taylor coefficients of R, T, U up to bidegree M against the recursion tables;
// returns the largest absolute difference (0 means exact agreement)
ExactScalar pfd_genfunc_check(int M, const ExactScalar& a, const ExactScalar& b, const ExactScalar& c,
                              const ExactScalar& d);

// (g_k, h_k) = M (g_{k-1}, h_{k-1}) from index i on; coefficients of G and H to `order`
struct Rec2 {
  std::vector<ExactScalar> g, h;
};
Rec2 recurrence_iterate(const std::array<ExactScalar, 4>& M, const ExactScalar& gi,
                        const ExactScalar& hi, int i, int order);
Rec2 recurrence_genfunc(const std::array<ExactScalar, 4>& M, const ExactScalar& gi,
                        const ExactScalar& hi, int i, int order);

}  // namespace ridgelab
