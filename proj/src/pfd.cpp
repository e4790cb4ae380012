#include "ridgelab/pfd.hpp"

#include <algorithm>
#include <cmath>

#include "ridgelab/series.hpp"
#include <gmpxx.h>

namespace ridgelab {

PfdCoeffTable<double> pfd_tables(int m, int n, const ImnParams& p) {
  p.validate();
  return pfd_tables_t<double>(m, n, p.a, p.b, p.c, p.d);
}

PfdCoeffTable<ExactScalar> pfd_tables_exact(int m, int n, const ExactScalar& a, const ExactScalar& b,
                                            const ExactScalar& c, const ExactScalar& d) {
  auto P = pfd_tables_t<ExactScalar>(m, n, a, b, c, d);
  return P;
}

namespace {

template <class T>
T ipow(T x, int e) {
  T r = x;
  r = 1;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

// returns (P(x), reassembled(x))
template <class T>
std::pair<T, T> pfd_pair(const PfdCoeffTable<T>& P, const T& x) {
  const int m = P.m, n = P.n;
  const T& a = P.a;
  const T& b = P.b;
  const T A = a * a * (x - b) * (x - b) + P.c * P.c;
  const T B = x * x + P.d * P.d;
  T one = a;
  one = 1;
  const T direct = one / (ipow(A, m) * ipow(B, n));
  T sum = a - a;
  const T a2bx = a * a * b * x;
  for (int k = 1; k <= m; ++k) {
    T num = P.r[n][k] - a2bx * P.u[n][k];
    sum += ipow(a, 2 * n) / ipow(P.Delta, n + k - 1) * num / ipow(A, m - k + 1);
  }
  for (int l = 1; l <= n; ++l) {
    T num = P.t[l][m] + a2bx * P.u[l][m];
    sum += ipow(a, 2 * (l - 1)) / ipow(P.Delta, m + l - 1) * num / ipow(B, n - l + 1);
  }
  return {direct, sum};
}

}  // namespace

double pfd_residual(int m, int n, const ImnParams& p, double x, unsigned bits) {
  p.validate();
  // 1/Delta^k terms cancel heavily when delta_- is small; double is not enough there
  if (mpf_get_default_prec() < bits) mpf_set_default_prec(bits);
  auto f = [&](double v) { return mpf_class(v, bits); };
  auto P = pfd_tables_t<mpf_class>(m, n, f(p.a), f(p.b), f(p.c), f(p.d));
  auto [direct, sum] = pfd_pair<mpf_class>(P, f(x));
  mpf_class r = (direct - sum) / direct;
  return std::abs(r.get_d());
}

ExactScalar pfd_residual_exact(int m, int n, const ExactScalar& a, const ExactScalar& b,
                               const ExactScalar& c, const ExactScalar& d, const ExactScalar& x) {
  auto P = pfd_tables_t<ExactScalar>(m, n, a, b, c, d);
  auto [direct, sum] = pfd_pair<ExactScalar>(P, x);
  ExactScalar r = (direct - sum) / direct;
  r.canonicalize();
  return abs(r);
}

ExactScalar pfd_genfunc_check(int M, const ExactScalar& a, const ExactScalar& b, const ExactScalar& c,
                              const ExactScalar& d) {
  auto P = pfd_tables_t<ExactScalar>(M, M, a, b, c, d);
  using S2 = Series2<mpq_class>;
  // D = Delta (y - z)^2 - 2 t11 y - 2 q z + 1
  S2 D(M, M);
  D(0, 0) = 1;
  if (M >= 1) {
    D(1, 0) = -2 * P.t11;
    D(0, 1) = -2 * P.q;
  }
  if (M >= 2) {
    D(2, 0) = P.Delta;
    D(0, 2) = P.Delta;
  }
  if (M >= 1) D(1, 1) = -2 * P.Delta;
  S2 Dinv = D.inverse();
  S2 yz(M, M), ymz(M, M);
  if (M >= 1) {
    yz(1, 1) = 1;
    ymz(1, 0) = 1;
    ymz(0, 1) = -1;
  }
  S2 Rn = ymz * P.Delta + S2::constant(M, M, P.r11);
  S2 Tn = ymz * mpq_class(-P.Delta) + S2::constant(M, M, P.t11);
  S2 R = yz * Rn * Dinv;
  S2 T = yz * Tn * Dinv;
  S2 U = yz * Dinv * mpq_class(2);
  ExactScalar worst = 0;
  auto upd = [&](const ExactScalar& x, const ExactScalar& y) {
    ExactScalar e = abs(x - y);
    if (e > worst) worst = e;
  };
  for (int l = 0; l <= M; ++l)
    for (int k = 0; k <= M; ++k) {
      if (l == 0 || k == 0) {
        upd(R(k, l), 0);
        upd(T(k, l), 0);
        upd(U(k, l), 0);
        continue;
      }
      upd(R(k, l), P.r[l][k]);
      upd(T(k, l), P.t[l][k]);
      upd(U(k, l), P.u[l][k]);
    }
  return worst;
}

Rec2 recurrence_iterate(const std::array<ExactScalar, 4>& M, const ExactScalar& gi,
                        const ExactScalar& hi, int i, int order) {
  Rec2 out;
  out.g.assign(order + 1, 0);
  out.h.assign(order + 1, 0);
  ExactScalar g = gi, h = hi;
  for (int k = i; k <= order; ++k) {
    out.g[k] = g;
    out.h[k] = h;
    ExactScalar g2 = M[0] * g + M[1] * h;
    ExactScalar h2 = M[2] * g + M[3] * h;
    g = g2;
    h = h2;
  }
  return out;
}

Rec2 recurrence_genfunc(const std::array<ExactScalar, 4>& M, const ExactScalar& gi,
                        const ExactScalar& hi, int i, int order) {
  const ExactScalar det = M[0] * M[3] - M[1] * M[2];
  const ExactScalar tr = M[0] + M[3];
  // 1/(det y^2 - tr y + 1) by the three-term recurrence
  std::vector<ExactScalar> inv(order + 1, 0);
  for (int k = 0; k <= order; ++k) {
    ExactScalar v = k == 0 ? ExactScalar(1) : ExactScalar(0);
    if (k >= 1) v += tr * inv[k - 1];
    if (k >= 2) v -= det * inv[k - 2];
    inv[k] = v;
  }
  const ExactScalar g1 = M[1] * hi - M[3] * gi;
  const ExactScalar h1 = M[2] * gi - M[0] * hi;
  Rec2 out;
  out.g.assign(order + 1, 0);
  out.h.assign(order + 1, 0);
  for (int k = i; k <= order; ++k) {
    const int e = k - i;
    out.g[k] = gi * inv[e] + (e >= 1 ? g1 * inv[e - 1] : ExactScalar(0));
    out.h[k] = hi * inv[e] + (e >= 1 ? h1 * inv[e - 1] : ExactScalar(0));
  }
  return out;
}

}  // namespace ridgelab
