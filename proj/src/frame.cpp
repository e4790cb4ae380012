#include "ridgelab/frame.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <unordered_set>

namespace ridgelab {

namespace {

constexpr double pi = std::numbers::pi;

double binom(int n, int k) {
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// radial factor in t = log2|xi|
double radial(int order, int j, double r) {
  if (j == 0) {
    if (r <= 1) return 1;
    if (r >= 2) return 0;
    return std::cos(pi / 2 * smoothstep(order, std::log2(r)));
  }
  if (r <= 0) return 0;
  const double t = std::log2(r);
  if (t <= j - 1 || t >= j + 1) return 0;
  if (t <= j) return std::sin(pi / 2 * smoothstep(order, t - j + 1));
  return std::cos(pi / 2 * smoothstep(order, t - j));
}

// angular factor; u is the signed angle offset in units of the direction spacing
double angular(int order, double eps, double u) {
  const double a = std::abs(u);
  if (a <= 0.5 - eps) return 1;
  if (a >= 0.5 + eps) return 0;
  return std::cos(pi / 2 * smoothstep(order, (a - (0.5 - eps)) / (2 * eps)));
}

double wrap_angle(double a) { return std::remainder(a, 2 * pi); }

void check_index(const BankConfig& cfg, int j, int l) {
  if (j < 0 || j > cfg.J) throw SpecError("scale out of range");
  const int L = j == 0 ? 1 : directions_at(j);
  if (l < 0 || l >= L) throw SpecError("direction index out of range");
}

// Picks integer columns near the ideal dual generators such that the window's support
// points fall in distinct cosets of V Z^2; then the sampled system is exactly tight.
void choose_lattice(Window& w, const GridSpec& g) {
  const double d = g.dxi();
  const Vec2 e{w.dir.v[0], w.dir.v[1]}, n{-w.dir.v[1], w.dir.v[0]};
  const double len1 = std::ldexp(1.0, w.j) / w.sigma[0] / d, len2 = 1 / w.sigma[1] / d;
  std::unordered_set<std::uint64_t> seen;
  for (int attempt = 0; attempt < 64; ++attempt) {
    const double s1 = 1 + 0.02 * (attempt / 8), s2 = 1 + 0.02 * (attempt % 8);
    const long a = std::lround(len1 * s1 * e[0]), c = std::lround(len1 * s1 * e[1]);
    const long b = std::lround(len2 * s2 * n[0]), dd = std::lround(len2 * s2 * n[1]);
    const long D = a * dd - b * c;
    if (D == 0) continue;
    const long M = std::abs(D);
    seen.clear();
    bool ok = true;
    for (int f : w.idx) {
      const long m1 = f / g.N - g.N / 2, m2 = f % g.N - g.N / 2;
      // coset of m is adj(V) m mod |D|
      long r1 = ((dd * m1 - b * m2) % M + M) % M;
      long r2 = ((-c * m1 + a * m2) % M + M) % M;
      if (!seen.insert(std::uint64_t(r1) * std::uint64_t(M) + std::uint64_t(r2)).second) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    w.V = {a, b, c, dd};
    w.det = D;
    w.period = 2 * g.L;
    // representatives with adj(V)^T k / D in [-1/2, 1/2)^2
    const long sg = D > 0 ? 1 : -1;
    const long K1 = long(std::ceil(std::hypot(double(a), double(c)))) + 1;
    const long K2 = long(std::ceil(std::hypot(double(b), double(dd)))) + 1;
    w.ks.clear();
    for (long k1 = -K1; k1 <= K1; ++k1)
      for (long k2 = -K2; k2 <= K2; ++k2) {
        const long n1 = sg * (dd * k1 - c * k2), n2 = sg * (-b * k1 + a * k2);
        if (-M <= 2 * n1 && 2 * n1 < M && -M <= 2 * n2 && 2 * n2 < M) w.ks.push_back({k1, k2});
      }
    if (long(w.ks.size()) != M) throw SpecError("lattice representative count mismatch");
    return;
  }
  throw SpecError("no tight lattice found for window (" + std::to_string(w.j) + ", " + std::to_string(w.l) + ")");
}

}  // namespace

double smoothstep(int order, double t) {
  if (t <= 0) return 0;
  if (t >= 1) return 1;
  double s = 0, p = 1;
  for (int i = 0; i <= order; ++i) {
    s += binom(order + i, i) * p;
    p *= 1 - t;
  }
  return std::pow(t, order + 1) * s;
}

Vec2 Window::position(const IVec2& k) const {
  // adj(V)^T k / det
  const double u1 = double(V[3] * k[0] - V[2] * k[1]) / double(det);
  const double u2 = double(-V[1] * k[0] + V[0] * k[1]) / double(det);
  return {period * u1, period * u2};
}

double window_value(const BankConfig& cfg, int j, int l, const Vec2& xi) {
  check_index(cfg, j, l);
  const double r = std::hypot(xi[0], xi[1]);
  const double rad = radial(cfg.order, j, r);
  if (j == 0 || rad == 0) return rad;
  const double delta = pi * std::ldexp(1.0, -j);
  const double u = wrap_angle(std::atan2(xi[1], xi[0]) - delta * l) / delta;
  return rad * angular(cfg.order, cfg.eps, u);
}

double window_value(const WindowBank& bank, int j, int l, const Vec2& xi) {
  return window_value(bank.config(), j, l, xi);
}

WindowBank::WindowBank(const BankConfig& cfg) : cfg_(cfg) {
  cfg_.grid.validate();
  if (cfg_.J < 1) throw SpecError("bank needs J >= 1");
  if (cfg_.grid.nyquist() < std::ldexp(1.0, cfg_.J + 1))
    throw SpecError("grid band limit " + std::to_string(cfg_.grid.nyquist()) + " below 2^(J+1)");
  if (!(cfg_.eps > 0 && cfg_.eps < 0.5)) throw SpecError("angular transition must be in (0, 1/2)");
  if (cfg_.order < 0) throw SpecError("negative profile order");

  const GridSpec& g = cfg_.grid;
  for (int j = 0; j <= cfg_.J; ++j) {
    offset_.push_back(int(windows_.size()));
    const auto dirs = sphere_sampling(j);
    const int L = directions(j);
    for (int l = 0; l < L; ++l) {
      Window w;
      w.j = j;
      w.l = l;
      w.dir = dirs[l];
      w.R = rotation_to_e1(w.dir);
      w.sigma = j == 0 ? cfg_.sigma0 : cfg_.sigma;
      windows_.push_back(std::move(w));
    }
  }

  // one pass over the spectrum: each point meets at most two scales and two directions each
  const double top = std::ldexp(1.0, cfg_.J + 1), band = std::ldexp(1.0, cfg_.J);
  std::vector<std::pair<int, double>> hits;
  for (int p1 = 0; p1 < g.N; ++p1)
    for (int p2 = 0; p2 < g.N; ++p2) {
      const Vec2 xi{g.xi(p1), g.xi(p2)};
      const double r = std::hypot(xi[0], xi[1]);
      if (r >= top) continue;
      hits.clear();
      if (r < 2) {
        const double v = radial(cfg_.order, 0, r);
        if (v > 0) hits.emplace_back(0, v);
      }
      if (r > 0) {
        const double t = std::log2(r);
        const double theta = std::atan2(xi[1], xi[0]);
        for (int j = std::max(1, int(std::floor(t))); j <= std::min(cfg_.J, int(std::floor(t)) + 1); ++j) {
          const double rad = radial(cfg_.order, j, r);
          if (rad == 0) continue;
          const int L = directions_at(j);
          const double delta = pi * std::ldexp(1.0, -j);
          const int l0 = int(std::lround(theta / delta));
          for (int dl = -1; dl <= 1; ++dl) {
            const int l = ((l0 + dl) % L + L) % L;
            const double u = wrap_angle(theta - delta * l) / delta;
            const double a = angular(cfg_.order, cfg_.eps, u);
            if (a > 0) hits.emplace_back(offset_[j] + l, rad * a);
          }
        }
      }
      if (hits.empty()) continue;
      if (r <= band) {
        double s = 0;
        for (auto& h : hits) s += h.second * h.second;
        const double inv = 1 / std::sqrt(s);
        for (auto& h : hits) h.second *= inv;
      }
      const int flat = p1 * g.N + p2;
      for (auto& h : hits) {
        windows_[h.first].idx.push_back(flat);
        windows_[h.first].val.push_back(h.second);
      }
    }

  std::vector<double> sum(g.size(), 0.0);
  for (const Window& w : windows_)
    for (std::size_t i = 0; i < w.idx.size(); ++i) sum[w.idx[i]] += w.val[i] * w.val[i];
  for (int p1 = 0; p1 < g.N; ++p1)
    for (int p2 = 0; p2 < g.N; ++p2)
      if (std::hypot(g.xi(p1), g.xi(p2)) <= band)
        defect_ = std::max(defect_, std::abs(sum[std::size_t(p1) * g.N + p2] - 1));

  for (Window& w : windows_) choose_lattice(w, g);
}

std::size_t WindowBank::coefficient_count() const {
  std::size_t n = 0;
  for (const Window& w : windows_) n += w.ks.size();
  return n;
}

nlohmann::json WindowBank::describe() const {
  return {{"profile", cfg_.profile()},
          {"J", cfg_.J},
          {"sigma", {cfg_.sigma[0], cfg_.sigma[1]}},
          {"sigma0", {cfg_.sigma0[0], cfg_.sigma0[1]}},
          {"angular_eps", cfg_.eps},
          {"grid", {{"L", cfg_.grid.L}, {"N", cfg_.grid.N}}},
          {"windows", windows_.size()},
          {"coefficients", coefficient_count()}};
}

WindowBank build_window_bank(const BankConfig& cfg) { return WindowBank(cfg); }

double weight(const WeightRule& rule, const FrameIndex& lam, const WindowBank& bank) {
  return 1 + std::ldexp(std::abs(rule.s.dot(bank.direction(lam.j, lam.l))), lam.j);
}

double ridgelet_space_decay_check(const BankConfig& cfg, const FrameIndex& lam, int m,
                                  const GridSpec& g, bool modified) {
  check_index(cfg, lam.j, lam.l);
  g.validate();
  if (g.nyquist() < std::ldexp(1.0, lam.j + 1)) throw SpecError("grid does not resolve scale");
  // the continuous ridgelet, translated to R^T (2^-j sigma1 k1, sigma2 k2)
  const Direction dir = lam.j == 0 ? Direction{} : sphere_sampling(lam.j)[lam.l];
  const Vec2 sg = lam.j == 0 ? cfg.sigma0 : cfg.sigma;
  const Vec2 xk = rotation_to_e1(dir).transpose() *
                  Vec2{std::ldexp(sg[0] * double(lam.k[0]), -lam.j), sg[1] * double(lam.k[1])};
  // spectrum below carries no 2^{-j/2}; the plain check needs it twice, the modified one cancels it
  const double amp = std::ldexp(1.0, -lam.j);
  std::vector<cplx> spec(g.size());
  for (int p1 = 0; p1 < g.N; ++p1)
    for (int p2 = 0; p2 < g.N; ++p2) {
      const Vec2 xi{g.xi(p1), g.xi(p2)};
      double v = window_value(cfg, lam.j, lam.l, xi);
      if (v == 0) continue;
      if (modified) v *= xi[0] / (xi[0] * xi[0] + xi[1] * xi[1]);
      const double ph = -2 * pi * (xk[0] * xi[0] + xk[1] * xi[1]);
      spec[std::size_t(p1) * g.N + p2] = v * cplx(std::cos(ph), std::sin(ph));
    }
  const GridFunction phi = fft_inverse(g, spec);
  const AnisotropicMap U(lam.j, dir);
  double sup = 0;
  for (int i1 = 0; i1 < g.N; ++i1)
    for (int i2 = 0; i2 < g.N; ++i2) {
      Vec2 d{g.x(i1) - xk[0], g.x(i2) - xk[1]};
      for (double& c : d) c = std::remainder(c, 2 * g.L);
      // nearest periodic image in the anisotropic metric; a rotated ridge can sit
      // closer to a neighbouring copy than to the one picked by per-axis wrapping
      double reg2 = HUGE_VAL;
      for (int n1 = -1; n1 <= 1; ++n1)
        for (int n2 = -1; n2 <= 1; ++n2) {
          const Vec2 y = U.apply_inv({d[0] + 2 * g.L * n1, d[1] + 2 * g.L * n2});
          reg2 = std::min(reg2, 1 + y[0] * y[0] + y[1] * y[1]);
        }
      sup = std::max(sup, std::abs(phi.at(i1, i2)) * std::pow(reg2, m));
    }
  return modified ? sup : sup * amp;
}

}  // namespace ridgelab
