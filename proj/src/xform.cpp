#include "ridgelab/xform.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <stdexcept>

#include "ridgelab/kernels.hpp"

namespace ridgelab {

namespace {

constexpr double two_pi = 2 * std::numbers::pi;

void check_grid(const GridFunction& f, const WindowBank& bank) {
  if (!(f.grid == bank.grid())) throw SpecError("grid function and bank were built for different grids");
}

// synthesis weight 1 / (dxi sqrt|det V|); analysis carries an extra dxi^2
double frame_scale(const Window& w, const GridSpec& g) {
  return 1 / (g.dxi() * std::sqrt(double(std::abs(w.det))));
}

// Exact phase tables for E_km = e^{2 pi i k . V^{-1} m}. V^{-1} m = adj(V) m / D, so every
// phase is a multiple of 2 pi / |D| and is evaluated from integer residues.
struct Phases {
  std::size_t n = 0;
  long M = 1;
  std::vector<long> r1, r2;
  std::vector<double> ar, ai;
  long k2lo = 0;
  std::vector<std::vector<double>> br, bi;

  static long mod(long x, long M) { return ((x % M) + M) % M; }
  double angle(long r) const { return 2 * std::numbers::pi * double(r) / double(M); }

  Phases(const Window& w, const GridSpec& g) : n(w.idx.size()), M(std::abs(w.det)), r1(n), r2(n), ar(n), ai(n) {
    const long a = w.V[0], b = w.V[1], c = w.V[2], d = w.V[3];
    const long sg = w.det > 0 ? 1 : -1;
    for (std::size_t i = 0; i < n; ++i) {
      const long m1 = w.idx[i] / g.N - g.N / 2, m2 = w.idx[i] % g.N - g.N / 2;
      r1[i] = mod(sg * (d * m1 - b * m2), M);
      r2[i] = mod(sg * (-c * m1 + a * m2), M);
      ar[i] = std::cos(angle(r1[i]));
      ai[i] = std::sin(angle(r1[i]));
    }
    if (w.ks.empty()) return;
    long hi = w.ks.front()[1];
    k2lo = hi;
    for (const IVec2& k : w.ks) {
      k2lo = std::min(k2lo, k[1]);
      hi = std::max(hi, k[1]);
    }
    br.resize(hi - k2lo + 1);
    bi.resize(hi - k2lo + 1);
    for (long k2 = k2lo; k2 <= hi; ++k2) {
      auto& r = br[k2 - k2lo];
      auto& im = bi[k2 - k2lo];
      r.resize(n);
      im.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double ph = angle(mod(k2 * r2[i], M));
        r[i] = std::cos(ph);
        im[i] = std::sin(ph);
      }
    }
  }

  // p = e^{sign 2 pi i k1 (V^{-1} m)_1}
  void power(long k1, double sign, double* pr, double* pi) const {
    for (std::size_t i = 0; i < n; ++i) {
      const double ph = angle(mod(k1 * r1[i], M));
      pr[i] = std::cos(ph);
      pi[i] = sign * std::sin(ph);
    }
  }
};

// rows restart from a direct evaluation this often to bound recurrence drift
constexpr long kRefresh = 32;

void analyze_window(const Window& w, const GridSpec& g, const std::vector<cplx>& spec,
                    std::vector<cplx>& out) {
  const auto& K = kern::active();
  const Phases ph(w, g);
  const std::size_t n = ph.n;
  out.assign(w.ks.size(), cplx{});
  if (n == 0 || w.ks.empty()) return;
  const double scale = frame_scale(w, g) * g.dxi() * g.dxi();
  std::vector<double> gr(n), gi(n), vr(n), vi(n);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx z = spec[w.idx[i]] * (w.val[i] * scale);
    gr[i] = z.real();
    gi[i] = z.imag();
  }
  long cur = 0;
  bool have = false;
  long since = 0;
  for (std::size_t s = 0; s < w.ks.size(); ++s) {
    const long k1 = w.ks[s][0];
    if (!have || k1 != cur) {
      if (have && k1 == cur + 1 && since < kRefresh) {
        K.cmul(n, vr.data(), vi.data(), ph.ar.data(), ph.ai.data());
        ++since;
      } else {
        ph.power(k1, 1.0, vr.data(), vi.data());
        K.cmul(n, vr.data(), vi.data(), gr.data(), gi.data());
        since = 0;
      }
      cur = k1;
      have = true;
    }
    const auto& br = ph.br[w.ks[s][1] - ph.k2lo];
    const auto& bi = ph.bi[w.ks[s][1] - ph.k2lo];
    double re, im;
    K.cdot(n, vr.data(), vi.data(), br.data(), bi.data(), &re, &im);
    out[s] = cplx(re, im);
  }
}

// returns the window's contribution on its own support (aligned with w.idx)
std::vector<cplx> synthesize_window(const Window& w, const GridSpec& g, const std::vector<cplx>& c) {
  const auto& K = kern::active();
  const Phases ph(w, g);
  const std::size_t n = ph.n;
  std::vector<cplx> res(n);
  if (n == 0 || w.ks.empty()) return res;
  std::vector<double> accr(n, 0), acci(n, 0), rr(n), ri(n), qr(n), qi(n);
  std::vector<double> car(n), cai(n);
  for (std::size_t i = 0; i < n; ++i) {
    car[i] = ph.ar[i];
    cai[i] = -ph.ai[i];
  }
  long qk = 0;
  bool have = false;
  long since = 0;
  std::size_t s = 0;
  while (s < w.ks.size()) {
    const long k1 = w.ks[s][0];
    std::fill(rr.begin(), rr.end(), 0.0);
    std::fill(ri.begin(), ri.end(), 0.0);
    bool any = false;
    for (; s < w.ks.size() && w.ks[s][0] == k1; ++s) {
      const cplx a = c[s];
      if (a == cplx{}) continue;
      any = true;
      const auto& br = ph.br[w.ks[s][1] - ph.k2lo];
      const auto& bi = ph.bi[w.ks[s][1] - ph.k2lo];
      K.caxpy_conj(n, a.real(), a.imag(), br.data(), bi.data(), rr.data(), ri.data());
    }
    // advance conj(A)^{k1}
    if (have && k1 == qk + 1 && since < kRefresh) {
      K.cmul(n, qr.data(), qi.data(), car.data(), cai.data());
      ++since;
    } else {
      ph.power(k1, -1.0, qr.data(), qi.data());
      since = 0;
    }
    qk = k1;
    have = true;
    if (any) K.cfma(n, accr.data(), acci.data(), qr.data(), qi.data(), rr.data(), ri.data());
  }
  const double scale = frame_scale(w, g);
  for (std::size_t i = 0; i < n; ++i) res[i] = cplx(accr[i], acci[i]) * (w.val[i] * scale);
  return res;
}

}  // namespace

CoefficientSet CoefficientSet::zeros(const WindowBank& bank) {
  CoefficientSet c;
  c.bank = &bank;
  for (const Window& w : bank.windows()) c.blocks.emplace_back(w.ks.size());
  return c;
}

std::size_t CoefficientSet::size() const {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.size();
  return n;
}

double CoefficientSet::l2_norm() const {
  double s = 0;
  for (const auto& b : blocks)
    for (const cplx& z : b) s += std::norm(z);
  return std::sqrt(s);
}

FrameIndex CoefficientSet::index(int window, int slot) const {
  const Window& w = bank->windows().at(window);
  return FrameIndex{w.j, w.l, w.ks.at(slot)};
}

std::vector<CoefficientEntry> CoefficientSet::entries() const {
  std::vector<CoefficientEntry> out;
  out.reserve(size());
  for (int w = 0; w < int(blocks.size()); ++w)
    for (int i = 0; i < int(blocks[w].size()); ++i) out.push_back({index(w, i), blocks[w][i], w, i});
  return out;
}

CoefficientSet analyze(const GridFunction& f, const WindowBank& bank) {
  check_grid(f, bank);
  const auto spec = fft_forward(f);
  CoefficientSet c = CoefficientSet::zeros(bank);
  const auto& ws = bank.windows();
  parallel_for(int(ws.size()), [&](int i) { analyze_window(ws[i], bank.grid(), spec, c.blocks[i]); });
  return c;
}

CoefficientSet analyze_direct(const GridFunction& f, const WindowBank& bank) {
  check_grid(f, bank);
  const GridSpec& g = bank.grid();
  const auto spec = fft_forward(f);
  CoefficientSet c = CoefficientSet::zeros(bank);
  const auto& ws = bank.windows();
  parallel_for(int(ws.size()), [&](int wi) {
    const Window& w = ws[wi];
    const double scale = frame_scale(w, g) * g.dxi() * g.dxi();
    for (std::size_t s = 0; s < w.ks.size(); ++s) {
      const Vec2 x = w.position(w.ks[s]);
      cplx acc = 0;
      for (std::size_t i = 0; i < w.idx.size(); ++i) {
        const int p1 = w.idx[i] / g.N, p2 = w.idx[i] % g.N;
        const double ph = two_pi * (x[0] * g.xi(p1) + x[1] * g.xi(p2));
        acc += spec[w.idx[i]] * w.val[i] * cplx(std::cos(ph), std::sin(ph));
      }
      c.blocks[wi][s] = acc * scale;
    }
  });
  return c;
}

GridFunction synthesize(const CoefficientSet& c, const WindowBank& bank) {
  const auto& ws = bank.windows();
  if (c.blocks.size() != ws.size()) throw SpecError("coefficient set does not match bank");
  std::vector<std::vector<cplx>> parts(ws.size());
  parallel_for(int(ws.size()), [&](int i) { parts[i] = synthesize_window(ws[i], bank.grid(), c.blocks[i]); });
  // merged in window order so the result does not depend on the thread count
  std::vector<cplx> spec(bank.grid().size());
  for (std::size_t w = 0; w < ws.size(); ++w)
    for (std::size_t i = 0; i < parts[w].size(); ++i) spec[ws[w].idx[i]] += parts[w][i];
  return fft_inverse(bank.grid(), spec);
}

void synthesize_into(std::vector<cplx>& spec, const WindowBank& bank,
                     const std::vector<CoefficientEntry>& picked) {
  const GridSpec& g = bank.grid();
  if (spec.size() != g.size()) throw SpecError("spectrum size does not match bank grid");
  for (const CoefficientEntry& e : picked) {
    const Window& w = bank.windows().at(e.window);
    const Vec2 x = w.position(w.ks.at(e.slot));
    const cplx a = e.value * frame_scale(w, g);
    for (std::size_t i = 0; i < w.idx.size(); ++i) {
      const int p1 = w.idx[i] / g.N, p2 = w.idx[i] % g.N;
      const double ph = -two_pi * (x[0] * g.xi(p1) + x[1] * g.xi(p2));
      spec[w.idx[i]] += a * w.val[i] * cplx(std::cos(ph), std::sin(ph));
    }
  }
}

double parseval_defect(const GridFunction& f, const WindowBank& bank) {
  const double nf = l2_norm(f);
  if (nf == 0) throw std::domain_error("parseval ratio undefined for the zero function");
  const double nc = analyze(f, bank).l2_norm();
  return std::abs(nc * nc / (nf * nf) - 1);
}

double hs_norm_via_weights(const CoefficientSet& c, const WeightRule& rule) {
  if (c.weighted) throw std::invalid_argument("coefficients are already weighted");
  double s = 0;
  for (int w = 0; w < int(c.blocks.size()); ++w) {
    const Window& win = c.bank->windows()[w];
    const double wt = weight(rule, {win.j, win.l, {0, 0}}, *c.bank);
    for (const cplx& z : c.blocks[w]) s += wt * wt * std::norm(z);
  }
  return std::sqrt(s);
}

void write_coefficients_csv(const CoefficientSet& c, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  os.precision(17);
  os << "j,l,k1,k2,re,im\n";
  for (int w = 0; w < int(c.blocks.size()); ++w)
    for (int i = 0; i < int(c.blocks[w].size()); ++i) {
      const FrameIndex f = c.index(w, i);
      os << f.j << ',' << f.l << ',' << f.k[0] << ',' << f.k[1] << ',' << c.blocks[w][i].real() << ','
         << c.blocks[w][i].imag() << '\n';
    }
}

GridFunction band_limit(const GridFunction& f, const WindowBank& bank) {
  check_grid(f, bank);
  auto spec = fft_forward(f);
  std::vector<double> mask(spec.size(), 0.0);
  for (const Window& w : bank.windows())
    if (w.j < bank.J())
      for (std::size_t i = 0; i < w.idx.size(); ++i) mask[w.idx[i]] += w.val[i] * w.val[i];
  for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= mask[i];
  return fft_inverse(bank.grid(), spec);
}

}  // namespace ridgelab
