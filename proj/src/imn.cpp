#include "ridgelab/imn.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>

#include "ridgelab/series.hpp"

namespace ridgelab {

namespace {

constexpr double kPi = std::numbers::pi;

int sign_pow(long e) { return (e % 2 == 0) ? 1 : -1; }

ExactScalar wk(int m, int k) {
  if (m == 1) return k == 0 ? 1 : 0;
  if (k < 1 || k > m - 1) return 0;
  mpz_class p2 = 1;
  mpz_mul_2exp(p2.get_mpz_t(), p2.get_mpz_t(), k);
  ExactScalar r(p2 * k * binom_int(2 * m - k - 3, m - k - 1), mpz_class(m - 1));
  r.canonicalize();
  return r;
}

}  // namespace

void ImnParams::validate() const {
  if (m < 1 || n < 1) throw std::invalid_argument("I_{m,n} needs m, n >= 1");
  if (!(a >= 0) || !(c > 0) || !(d > 0) || !std::isfinite(b))
    throw std::invalid_argument("I_{m,n} needs a >= 0, c > 0, d > 0");
}

bool cmn_pattern(int m, int n, int i, int j) {
  const int K = 2 * (m + n) - 3;
  return ((i + j) % 2 == 1) && (i + j <= K) && (i >= 2 * m - 1 || j >= 2 * n - 1);
}

ExactScalar cmn_coefficient(int m, int n, int i, int j) {
  if (m < 1 || n < 1 || i < 0 || j < 0) throw IndexError("cmn index out of range");
  const int K = 2 * (m + n) - 3;
  if ((i + j) % 2 == 0 || i + j > K) return 0;
  ExactScalar tot = 0;
  for (int r = 0; r <= i; ++r)
    for (int s = 0; s <= j; ++s) {
      if ((r + s) % 2 == 0) continue;
      const int rest = i + j - r - s;
      if (rest % 2) continue;
      const int e = m + n - 1 - rest / 2;
      mpz_class bb = binom_int(r + s, s) * binom_int(m + n - 1, e) * binom_int(rest, i - r);
      if (bb == 0) continue;
      ExactScalar term = binom_real(ExactScalar(r - 1, 2), m - 1) * binom_real(ExactScalar(s - 1, 2), n - 1);
      term *= ExactScalar(bb);
      if (sign_pow(m + n + (r + s - 1) / 2) < 0) term = -term;
      tot += term;
    }
  tot.canonicalize();
  return tot;
}

ExactScalar cmn_coefficient_long(int m, int n, int i, int j) {
  if (m < 1 || n < 1 || i < 0 || j < 0) throw IndexError("cmn index out of range");
  if ((i + j) % 2 == 0) return 0;
  const int M = m + n;
  std::vector<int> ks, ls;
  if (m == 1) ks = {0}; else for (int k = 1; k < m; ++k) ks.push_back(k);
  if (n == 1) ls = {0}; else for (int l = 1; l < n; ++l) ls.push_back(l);
  mpz_class tot = 0;
  ExactScalar acc = 0;
  for (int k : ks)
    for (int l : ls) {
      const ExactScalar w = wk(m, k) * wk(n, l);
      tot = 0;
      for (int p = 0; p <= l; ++p)
        for (int q = 0; q <= k; ++q)
          for (int r = 0; r <= k - q; ++r) {
            if (M - 2 - l - r < 0) continue;
            mpz_class b0 = binom_int(l + 1, p) * binom_int(l - p, q) * binom_int(l + r, r);
            if (b0 == 0) continue;
            for (int s = 0; s < M; ++s) {
              if (M - 2 - p - q - r - s < 0) break;
              mpz_class b1 = b0 * binom_int(M - 2 - l - r, s);
              if (b1 == 0) continue;
              for (int t = 0; t < M; ++t) {
                mpz_class b = b1 * binom_int(M - 2 - p - q - r - s, t);
                if (b == 0) continue;
                mpz_class b2 = binom_int(M - 1, j - p - s) * binom_int(M - 1 - j + p + s, i - q - r - t);
                if (b2 == 0) continue;
                long sg = (3L * (i + j) + 1) / 2 + p + s + r + t;
                if (sign_pow(sg) > 0) tot += b * b2; else tot -= b * b2;
              }
            }
          }
      acc += w * ExactScalar(tot);
    }
  if (M >= 2) {
    mpz_class p4 = 1;
    mpz_mul_2exp(p4.get_mpz_t(), p4.get_mpz_t(), 2 * (M - 2));
    acc /= ExactScalar(p4);
  }
  acc.canonicalize();
  return acc;
}

const CmnTable& cmn_table(int m, int n) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<CmnTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{m, n}];
  if (!slot) {
    auto t = std::make_unique<CmnTable>();
    t->m = m;
    t->n = n;
    t->K = 2 * (m + n) - 3;
    t->c.resize((t->K + 1) * (t->K + 1));
    for (int i = 0; i <= t->K; ++i)
      for (int j = 0; j <= t->K; ++j) t->c[i * (t->K + 1) + j] = cmn_coefficient(m, n, i, j);
    slot = std::move(t);
  }
  return *slot;
}

double imn_closed_form(const ImnParams& p) {
  p.validate();
  const CmnTable& T = cmn_table(p.m, p.n);
  const double ad = p.a * p.d, ab = p.a * p.b;
  const double dp = (p.c + ad) * (p.c + ad) + ab * ab;
  const double sq = std::sqrt(dp);
  // monomials normalised by sqrt(delta_+) so every base is <= 1
  const double g = p.c / sq, al = ad / sq, be = ab / sq;
  double sum = 0;
  for (int i = 0; i <= T.K; ++i)
    for (int j = 0; i + j <= T.K; ++j) {
      const ExactScalar& cij = T.at(i, j);
      if (cij == 0) continue;
      sum += cij.get_d() * std::pow(g, i) * std::pow(al, j) * std::pow(be, T.K - i - j);
    }
  return kPi / (sq * std::pow(p.c, 2 * p.m - 1) * std::pow(p.d, 2 * p.n - 1)) * sum;
}

double imn_integrand(const ImnParams& p, double x) {
  const double u = p.a * (x - p.b);
  return 1.0 / (std::pow(u * u + p.c * p.c, p.m) * std::pow(x * x + p.d * p.d, p.n));
}

QuadResult imn_quadrature(const ImnParams& p, double tol) {
  p.validate();
  if (tol < 1e-12) throw std::invalid_argument("quadrature tolerance below 1e-12");
  double S = p.d;
  if (p.a > 0) S = std::max({S, std::abs(p.b), p.c / p.a});
  // geometric fans of breakpoints around both peaks; a Kronrod rule can step
  // clean over a peak much narrower than its panel and never notice
  std::vector<double> pts;
  auto fan = [&](double x0, double w) {
    pts.push_back(x0);
    for (double h = w; h < 64 * S; h *= 2) {
      pts.push_back(x0 - h);
      pts.push_back(x0 + h);
    }
  };
  fan(0.0, p.d);
  if (p.a > 0) fan(p.b, p.c / p.a);
  return integrate_real_line([&](double x) { return imn_integrand(p, x); }, S, pts, tol);
}

std::vector<std::vector<double>> imn_series_table(int M, int N, double a, double b, double c,
                                                  double d, unsigned bits) {
  ImnParams{M, N, a, b, c, d}.validate();
  using S2 = Series2<mpf_class>;
  if (mpf_get_default_prec() < bits) mpf_set_default_prec(bits);
  const mpf_class proto(0, bits);
  auto num = [&](double x) { return mpf_class(x, bits); };
  const int dy = M - 1, dz = N - 1;
  S2 Y(dy, dz, proto), Z(dy, dz, proto);
  Y(0, 0) = num(c) * num(c);
  if (dy >= 1) Y(1, 0) = -1;
  Z(0, 0) = num(d) * num(d);
  if (dz >= 1) Z(0, 1) = -1;
  S2 V = Y.sqrt(), W = Z.sqrt();
  S2 P = V + W * num(a);
  mpf_class ab2 = num(a) * num(b);
  ab2 *= ab2;
  S2 Q = P * P + S2::constant(dy, dz, ab2);
  S2 F = P * (V * W * Q).inverse();
  std::vector<std::vector<double>> out(M, std::vector<double>(N));
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < N; ++j) out[i][j] = F(i, j).get_d() * kPi;
  return out;
}

double imn_generating_series(const ImnParams& p, unsigned bits) {
  p.validate();
  return imn_series_table(p.m, p.n, p.a, p.b, p.c, p.d, bits)[p.m - 1][p.n - 1];
}

namespace {
double bound_eval(const ImnParams& p, BoundVariant v, double a) {
  const double ab2 = a * a * p.b * p.b;
  const double den = v == BoundVariant::best ? (p.c + a * p.d) * (p.c + a * p.d) + ab2
                                             : ab2 + a * a * p.d * p.d + p.c * p.c;
  return std::pow(a, 2 * p.n - 1) / std::pow(den, p.n) / std::pow(p.c, 2 * p.m - 1) +
         1.0 / std::pow(den, p.m) / std::pow(p.d, 2 * p.n - 1);
}
}  // namespace

double upper_bound(const ImnParams& p, BoundVariant v, bool clamp_a) {
  p.validate();
  double r = bound_eval(p, v, p.a);
  // a^2 (x-b)^2 + c^2 >= (x-b)^2 + c^2 for a >= 1, so the a = 1 bound also holds
  if (clamp_a && p.a > 1) r = std::min(r, bound_eval(p, v, 1.0));
  return r;
}

double grafakos_bound(const ImnParams& p) {
  p.validate();
  const double a = p.a, b = p.b, c = p.c, d = p.d;
  const int m = p.m, n = p.n;
  return 1.0 / a / std::pow(b * b + d * d, n) / std::pow(c, 2 * m - 1) +
         1.0 / std::pow(a * a * b * b + c * c, n) / std::pow(c, 2 * (m - n)) / std::pow(d, 2 * n - 1);
}

double single_factor_integral(int m, double a, double c) {
  if (!(a > 0)) throw std::domain_error("single-factor integral diverges for a = 0");
  if (!(c > 0) || m < 1) throw std::invalid_argument("single-factor integral needs c > 0, m >= 1");
  const double central = binom_int(2 * (m - 1), m - 1).get_d() / std::ldexp(1.0, 2 * (m - 1));
  return kPi / (a * std::pow(c, 2 * m - 1)) * central;
}

ConvBound conv_bound_check(int k, int m, int n, double c, double d, const std::vector<double>& t,
                           double tol) {
  if (k < 1 || k > 3) throw std::invalid_argument("conv_bound_check supports k = 1, 2, 3");
  if (int(t.size()) != k) throw std::invalid_argument("shift vector length must equal k");
  const int h = (k + 1) / 2;
  if (m < h || n < h) throw std::invalid_argument("conv_bound_check needs m, n >= ceil(k/2)");
  double tn = 0;
  for (double x : t) tn += x * x;
  const double s = tn + c * c + d * d;
  ConvBound out;
  out.rhs = 1.0 / std::pow(s, n) / std::pow(c, 2 * m - k - 1) + 1.0 / std::pow(s, m) / std::pow(d, 2 * n - k - 1);
  out.rhs_homogeneous = 1.0 / std::pow(s, n) / std::pow(c, 2 * m - k) + 1.0 / std::pow(s, m) / std::pow(d, 2 * n - k);
  tn = std::sqrt(tn);
  // rotate t onto the first axis; the remaining k-1 coordinates enter through their radius
  auto inner = [&](double rho) {
    ImnParams p{m, n, 1.0, tn, std::sqrt(rho * rho + c * c), std::sqrt(rho * rho + d * d)};
    return imn_quadrature(p, tol).value;
  };
  if (k == 1) {
    out.lhs = inner(0.0);
  } else {
    const double S = std::max({c, d, tn});
    auto outer = [&](double rho) {
      double v = inner(rho);
      return k == 2 ? 2.0 * v : 2.0 * kPi * rho * v;
    };
    out.lhs = integrate_half_line(outer, S, {c, d, tn}, tol * 10).value;
  }
  return out;
}

PositivityReport positivity_scan(int m_max, int n_max) {
  PositivityReport rep;
  rep.m_max = m_max;
  rep.n_max = n_max;
  for (int m = 1; m <= m_max; ++m)
    for (int n = 1; n <= n_max; ++n) {
      const CmnTable& T = cmn_table(m, n);
      for (int i = 0; i <= T.K; ++i)
        for (int j = 0; j <= T.K; ++j) {
          ++rep.entries;
          const ExactScalar& v = T.at(i, j);
          if (cmn_pattern(m, n, i, j)) ++rep.pattern_count;
          if (v != 0) ++rep.nonzero;
          if (v < 0) rep.negatives.push_back({m, n, i, j, v.get_d()});
        }
    }
  return rep;
}

}  // namespace ridgelab
