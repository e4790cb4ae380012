#include "ridgelab/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define RL_HAVE_X86 1
#endif

namespace ridgelab::kern {

#ifdef RL_HAVE_X86
namespace {

#define RL_AVX2 __attribute__((target("avx2,fma")))

RL_AVX2 inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

RL_AVX2 void cdot(std::size_t n, const double* xr, const double* xi, const double* yr,
                  const double* yi, double* out_re, double* out_im) {
  __m256d sr0 = _mm256_setzero_pd(), si0 = _mm256_setzero_pd();
  __m256d sr1 = _mm256_setzero_pd(), si1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d ar = _mm256_loadu_pd(xr + i), ai = _mm256_loadu_pd(xi + i);
    __m256d br = _mm256_loadu_pd(yr + i), bi = _mm256_loadu_pd(yi + i);
    sr0 = _mm256_fmadd_pd(ar, br, sr0);
    sr0 = _mm256_fnmadd_pd(ai, bi, sr0);
    si0 = _mm256_fmadd_pd(ar, bi, si0);
    si0 = _mm256_fmadd_pd(ai, br, si0);
    ar = _mm256_loadu_pd(xr + i + 4);
    ai = _mm256_loadu_pd(xi + i + 4);
    br = _mm256_loadu_pd(yr + i + 4);
    bi = _mm256_loadu_pd(yi + i + 4);
    sr1 = _mm256_fmadd_pd(ar, br, sr1);
    sr1 = _mm256_fnmadd_pd(ai, bi, sr1);
    si1 = _mm256_fmadd_pd(ar, bi, si1);
    si1 = _mm256_fmadd_pd(ai, br, si1);
  }
  for (; i + 4 <= n; i += 4) {
    __m256d ar = _mm256_loadu_pd(xr + i), ai = _mm256_loadu_pd(xi + i);
    __m256d br = _mm256_loadu_pd(yr + i), bi = _mm256_loadu_pd(yi + i);
    sr0 = _mm256_fmadd_pd(ar, br, sr0);
    sr0 = _mm256_fnmadd_pd(ai, bi, sr0);
    si0 = _mm256_fmadd_pd(ar, bi, si0);
    si0 = _mm256_fmadd_pd(ai, br, si0);
  }
  double sr = hsum(_mm256_add_pd(sr0, sr1));
  double si = hsum(_mm256_add_pd(si0, si1));
  for (; i < n; ++i) {
    sr += xr[i] * yr[i] - xi[i] * yi[i];
    si += xr[i] * yi[i] + xi[i] * yr[i];
  }
  *out_re = sr;
  *out_im = si;
}

RL_AVX2 void caxpy_conj(std::size_t n, double ar, double ai, const double* xr, const double* xi,
                        double* yr, double* yi) {
  const __m256d var = _mm256_set1_pd(ar), vai = _mm256_set1_pd(ai);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d a = _mm256_loadu_pd(xr + i), b = _mm256_loadu_pd(xi + i);
    __m256d r = _mm256_loadu_pd(yr + i), m = _mm256_loadu_pd(yi + i);
    r = _mm256_fmadd_pd(var, a, r);
    r = _mm256_fmadd_pd(vai, b, r);
    m = _mm256_fmadd_pd(vai, a, m);
    m = _mm256_fnmadd_pd(var, b, m);
    _mm256_storeu_pd(yr + i, r);
    _mm256_storeu_pd(yi + i, m);
  }
  for (; i < n; ++i) {
    yr[i] += ar * xr[i] + ai * xi[i];
    yi[i] += ai * xr[i] - ar * xi[i];
  }
}

RL_AVX2 void cmul(std::size_t n, double* pr, double* pi, const double* qr, const double* qi) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d a = _mm256_loadu_pd(pr + i), b = _mm256_loadu_pd(pi + i);
    __m256d c = _mm256_loadu_pd(qr + i), d = _mm256_loadu_pd(qi + i);
    __m256d r = _mm256_fmsub_pd(a, c, _mm256_mul_pd(b, d));
    __m256d m = _mm256_fmadd_pd(a, d, _mm256_mul_pd(b, c));
    _mm256_storeu_pd(pr + i, r);
    _mm256_storeu_pd(pi + i, m);
  }
  for (; i < n; ++i) {
    double r = pr[i] * qr[i] - pi[i] * qi[i];
    double m = pr[i] * qi[i] + pi[i] * qr[i];
    pr[i] = r;
    pi[i] = m;
  }
}

RL_AVX2 void cfma(std::size_t n, double* accr, double* acci, const double* wr, const double* wi,
                  const double* pr, const double* pi) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d a = _mm256_loadu_pd(wr + i), b = _mm256_loadu_pd(wi + i);
    __m256d c = _mm256_loadu_pd(pr + i), d = _mm256_loadu_pd(pi + i);
    __m256d r = _mm256_loadu_pd(accr + i), m = _mm256_loadu_pd(acci + i);
    r = _mm256_fmadd_pd(a, c, r);
    r = _mm256_fnmadd_pd(b, d, r);
    m = _mm256_fmadd_pd(a, d, m);
    m = _mm256_fmadd_pd(b, c, m);
    _mm256_storeu_pd(accr + i, r);
    _mm256_storeu_pd(acci + i, m);
  }
  for (; i < n; ++i) {
    accr[i] += wr[i] * pr[i] - wi[i] * pi[i];
    acci[i] += wr[i] * pi[i] + wi[i] * pr[i];
  }
}

RL_AVX2 double norm2(std::size_t n, const double* re, const double* im) {
  __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d a = _mm256_loadu_pd(re + i), b = _mm256_loadu_pd(im + i);
    s0 = _mm256_fmadd_pd(a, a, s0);
    s1 = _mm256_fmadd_pd(b, b, s1);
  }
  double s = hsum(_mm256_add_pd(s0, s1));
  for (; i < n; ++i) s += re[i] * re[i] + im[i] * im[i];
  return s;
}

const Table kAvx2{"avx2", cdot, caxpy_conj, cmul, cfma, norm2};

}  // namespace

const Table* avx2() {
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return &kAvx2;
  return nullptr;
}

#else

const Table* avx2() { return nullptr; }

#endif

}  // namespace ridgelab::kern
