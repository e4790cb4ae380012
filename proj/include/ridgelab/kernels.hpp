#pragma once
#include <cstddef>

// Split-complex vector kernels used by the phase sums in xform.
// Arrays are (re, im) pairs of equal length; no alignment requirement.

namespace ridgelab::kern {

struct Table {
  const char* name;
  // returns sum_i x_i * y_i (no conjugation) in (*out_re, *out_im)
  void (*cdot)(std::size_t n, const double* xr, const double* xi,
               const double* yr, const double* yi, double* out_re, double* out_im);
  // y += alpha * conj(x)
  void (*caxpy_conj)(std::size_t n, double ar, double ai, const double* xr, const double* xi,
                     double* yr, double* yi);
  // p *= q elementwise
  void (*cmul)(std::size_t n, double* pr, double* pi, const double* qr, const double* qi);
  // acc += w * p elementwise
  void (*cfma)(std::size_t n, double* accr, double* acci, const double* wr, const double* wi,
               const double* pr, const double* pi);
  double (*norm2)(std::size_t n, const double* re, const double* im);
};

const Table& scalar();
// nullptr when the CPU lacks AVX2/FMA
const Table* avx2();
// picked once: AVX2 when available unless RIDGELAB_SIMD=scalar
const Table& active();

}  // namespace ridgelab::kern
