#pragma once
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ridgelab/geometry.hpp"

namespace ridgelab {

using cplx = std::complex<double>;

class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Periodic box [-L, L)^2 with N samples per axis.
// Sample (i1, i2) sits at x = (-L + i1 h, -L + i2 h) and is stored at i1 * N + i2.
// Frequencies xi_m = m / (2L), m in [-N/2, N/2), stored centred at m + N/2.
struct GridSpec {
  double L = 0.5;
  int N = 64;

  void validate() const;
  double h() const { return 2 * L / N; }
  double dxi() const { return 1 / (2 * L); }
  double x(int i) const { return -L + i * h(); }
  double xi(int p) const { return (p - N / 2) * dxi(); }
  // largest |xi| reached along an axis
  double nyquist() const { return (N / 2) * dxi(); }
  std::size_t size() const { return std::size_t(N) * N; }
  bool operator==(const GridSpec&) const = default;
};

struct GridFunction {
  GridSpec grid;
  std::vector<cplx> v;

  GridFunction() = default;
  explicit GridFunction(const GridSpec& g) : grid(g), v(g.size()) {}

  cplx& at(int i1, int i2) { return v[std::size_t(i1) * grid.N + i2]; }
  cplx at(int i1, int i2) const { return v[std::size_t(i1) * grid.N + i2]; }
};

GridFunction sample(const GridSpec& g, const std::function<cplx(Vec2)>& f);

// f_hat(xi) = int f e^{-2 pi i x.xi} dx, discretized with weight h^2
std::vector<cplx> fft_forward(const GridFunction& f);
GridFunction fft_inverse(const GridSpec& g, const std::vector<cplx>& spec);

// h^2 sum |f|^2, sqrt'ed
double l2_norm(const GridFunction& f);
double max_norm(const GridFunction& f);
// h^2 sum f conj(g)
cplx inner(const GridFunction& f, const GridFunction& g);

GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator*(cplx s, const GridFunction& a);

// bilinear interpolation of a periodic grid function at an arbitrary point
cplx interpolate(const GridFunction& f, const Vec2& x);

// row-major CSV of real parts, or of "re,im" pairs when complex_values
void write_csv(const GridFunction& f, const std::string& path, bool complex_values = false);
// header: L, N, h, dxi, 0, 0, 0, 0 as doubles; then interleaved re/im
void write_binary(const GridFunction& f, const std::string& path);
GridFunction read_binary(const std::string& path);

// worker count: RIDGELAB_THREADS if set, else hardware concurrency
int thread_count();
// runs body(i) for i in [0, n); static contiguous chunks
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace ridgelab
