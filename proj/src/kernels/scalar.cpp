#include "ridgelab/kernels.hpp"

namespace ridgelab::kern {
namespace {

void cdot(std::size_t n, const double* xr, const double* xi, const double* yr, const double* yi,
          double* out_re, double* out_im) {
  double sr = 0, si = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sr += xr[i] * yr[i] - xi[i] * yi[i];
    si += xr[i] * yi[i] + xi[i] * yr[i];
  }
  *out_re = sr;
  *out_im = si;
}

void caxpy_conj(std::size_t n, double ar, double ai, const double* xr, const double* xi,
                double* yr, double* yi) {
  for (std::size_t i = 0; i < n; ++i) {
    yr[i] += ar * xr[i] + ai * xi[i];
    yi[i] += ai * xr[i] - ar * xi[i];
  }
}

void cmul(std::size_t n, double* pr, double* pi, const double* qr, const double* qi) {
  for (std::size_t i = 0; i < n; ++i) {
    double r = pr[i] * qr[i] - pi[i] * qi[i];
    double m = pr[i] * qi[i] + pi[i] * qr[i];
    pr[i] = r;
    pi[i] = m;
  }
}

void cfma(std::size_t n, double* accr, double* acci, const double* wr, const double* wi,
          const double* pr, const double* pi) {
  for (std::size_t i = 0; i < n; ++i) {
    accr[i] += wr[i] * pr[i] - wi[i] * pi[i];
    acci[i] += wr[i] * pi[i] + wi[i] * pr[i];
  }
}

double norm2(std::size_t n, const double* re, const double* im) {
  double s = 0;
  for (std::size_t i = 0; i < n; ++i) s += re[i] * re[i] + im[i] * im[i];
  return s;
}

const Table kScalar{"scalar", cdot, caxpy_conj, cmul, cfma, norm2};

}  // namespace

const Table& scalar() { return kScalar; }

}  // namespace ridgelab::kern
