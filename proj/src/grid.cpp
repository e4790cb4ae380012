#include "ridgelab/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

namespace ridgelab {

void GridSpec::validate() const {
  if (N < 4 || (N & (N - 1)) != 0) throw SpecError("grid size must be a power of two >= 4");
  if (!(L > 0)) throw SpecError("grid half-width must be positive");
}

GridFunction sample(const GridSpec& g, const std::function<cplx(Vec2)>& f) {
  g.validate();
  GridFunction out(g);
  for (int i1 = 0; i1 < g.N; ++i1)
    for (int i2 = 0; i2 < g.N; ++i2) out.at(i1, i2) = f({g.x(i1), g.x(i2)});
  return out;
}

namespace {

std::mutex plan_mutex;

// in-place plans on fftw_alloc'd buffers; planning is the only non-reentrant part
fftw_plan plan_for(int N, int sign) {
  static std::map<std::pair<int, int>, fftw_plan> plans;
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto key = std::make_pair(N, sign);
  auto it = plans.find(key);
  if (it != plans.end()) return it->second;
  fftw_complex* tmp = fftw_alloc_complex(std::size_t(N) * N);
  fftw_plan p = fftw_plan_dft_2d(N, N, tmp, tmp, sign, FFTW_ESTIMATE);
  fftw_free(tmp);
  plans[key] = p;
  return p;
}

struct Buffer {
  fftw_complex* p;
  explicit Buffer(std::size_t n) : p(fftw_alloc_complex(n)) {}
  ~Buffer() { fftw_free(p); }
  Buffer(const Buffer&) = delete;
  Buffer& operator=(const Buffer&) = delete;
};

// centred index p <-> DFT bin (p + N/2) mod N; the (-1)^m factor moves the origin to -L
void transform(int N, int sign, const cplx* in, cplx* out, double scale) {
  const int H = N / 2;
  Buffer buf(std::size_t(N) * N);
  if (sign == FFTW_FORWARD) {
    for (std::size_t i = 0; i < std::size_t(N) * N; ++i) {
      buf.p[i][0] = in[i].real();
      buf.p[i][1] = in[i].imag();
    }
    fftw_execute_dft(plan_for(N, sign), buf.p, buf.p);
    for (int p1 = 0; p1 < N; ++p1)
      for (int p2 = 0; p2 < N; ++p2) {
        const std::size_t q = std::size_t((p1 + H) % N) * N + (p2 + H) % N;
        const double s = ((p1 + p2) & 1) ? -scale : scale;
        out[std::size_t(p1) * N + p2] = cplx(buf.p[q][0] * s, buf.p[q][1] * s);
      }
  } else {
    for (int p1 = 0; p1 < N; ++p1)
      for (int p2 = 0; p2 < N; ++p2) {
        const std::size_t q = std::size_t((p1 + H) % N) * N + (p2 + H) % N;
        const double s = ((p1 + p2) & 1) ? -scale : scale;
        const cplx z = in[std::size_t(p1) * N + p2];
        buf.p[q][0] = z.real() * s;
        buf.p[q][1] = z.imag() * s;
      }
    fftw_execute_dft(plan_for(N, sign), buf.p, buf.p);
    for (std::size_t i = 0; i < std::size_t(N) * N; ++i) out[i] = cplx(buf.p[i][0], buf.p[i][1]);
  }
}

}  // namespace

std::vector<cplx> fft_forward(const GridFunction& f) {
  f.grid.validate();
  std::vector<cplx> out(f.grid.size());
  const double h = f.grid.h();
  transform(f.grid.N, FFTW_FORWARD, f.v.data(), out.data(), h * h);
  return out;
}

GridFunction fft_inverse(const GridSpec& g, const std::vector<cplx>& spec) {
  g.validate();
  if (spec.size() != g.size()) throw SpecError("spectrum size does not match grid");
  GridFunction out(g);
  const double d = g.dxi();
  transform(g.N, FFTW_BACKWARD, spec.data(), out.v.data(), d * d);
  return out;
}

double l2_norm(const GridFunction& f) {
  double s = 0;
  for (const cplx& z : f.v) s += std::norm(z);
  return std::sqrt(s) * f.grid.h();
}

double max_norm(const GridFunction& f) {
  double m = 0;
  for (const cplx& z : f.v) m = std::max(m, std::abs(z));
  return m;
}

cplx inner(const GridFunction& f, const GridFunction& g) {
  if (!(f.grid == g.grid)) throw SpecError("grid mismatch");
  cplx s = 0;
  for (std::size_t i = 0; i < f.v.size(); ++i) s += f.v[i] * std::conj(g.v[i]);
  const double h = f.grid.h();
  return s * (h * h);
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
  if (!(a.grid == b.grid)) throw SpecError("grid mismatch");
  GridFunction out(a.grid);
  for (std::size_t i = 0; i < a.v.size(); ++i) out.v[i] = a.v[i] - b.v[i];
  return out;
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  if (!(a.grid == b.grid)) throw SpecError("grid mismatch");
  GridFunction out(a.grid);
  for (std::size_t i = 0; i < a.v.size(); ++i) out.v[i] = a.v[i] + b.v[i];
  return out;
}

GridFunction operator*(cplx s, const GridFunction& a) {
  GridFunction out(a.grid);
  for (std::size_t i = 0; i < a.v.size(); ++i) out.v[i] = s * a.v[i];
  return out;
}

cplx interpolate(const GridFunction& f, const Vec2& x) {
  const GridSpec& g = f.grid;
  const double u = (x[0] + g.L) / g.h(), w = (x[1] + g.L) / g.h();
  const double fu = std::floor(u), fw = std::floor(w);
  const double tu = u - fu, tw = w - fw;
  auto wrap = [N = g.N](long i) { return int(((i % N) + N) % N); };
  const int i0 = wrap(long(fu)), i1 = wrap(long(fu) + 1);
  const int j0 = wrap(long(fw)), j1 = wrap(long(fw) + 1);
  return (1 - tu) * ((1 - tw) * f.at(i0, j0) + tw * f.at(i0, j1)) +
         tu * ((1 - tw) * f.at(i1, j0) + tw * f.at(i1, j1));
}

void write_csv(const GridFunction& f, const std::string& path, bool complex_values) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  os.precision(17);
  const int N = f.grid.N;
  for (int i1 = 0; i1 < N; ++i1) {
    for (int i2 = 0; i2 < N; ++i2) {
      if (i2) os << ',';
      const cplx z = f.at(i1, i2);
      os << z.real();
      if (complex_values) os << ',' << z.imag();
    }
    os << '\n';
  }
}

void write_binary(const GridFunction& f, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  const double hdr[8] = {f.grid.L, double(f.grid.N), f.grid.h(), f.grid.dxi(), 0, 0, 0, 0};
  os.write(reinterpret_cast<const char*>(hdr), sizeof hdr);
  os.write(reinterpret_cast<const char*>(f.v.data()), std::streamsize(f.v.size() * sizeof(cplx)));
}

GridFunction read_binary(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read " + path);
  double hdr[8];
  is.read(reinterpret_cast<char*>(hdr), sizeof hdr);
  GridSpec g{hdr[0], int(hdr[1])};
  g.validate();
  GridFunction f(g);
  is.read(reinterpret_cast<char*>(f.v.data()), std::streamsize(f.v.size() * sizeof(cplx)));
  if (!is) throw std::runtime_error("truncated grid file " + path);
  return f;
}

int thread_count() {
  static const int n = [] {
    int hw = int(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("RIDGELAB_THREADS")) {
      int v = std::atoi(env);
      if (v >= 1) return std::min(v, hw * 4);
    }
    return hw;
  }();
  return n;
}

void parallel_for(int n, const std::function<void(int)>& body) {
  const int T = std::min(thread_count(), n);
  if (T <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errs(T);
  for (int t = 0; t < T; ++t)
    pool.emplace_back([&, t] {
      try {
        // strided so heavy and light items spread evenly
        for (int i = t; i < n; i += T) body(i);
      } catch (...) {
        errs[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

}  // namespace ridgelab
