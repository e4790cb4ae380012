#include "ridgelab/advection.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace ridgelab {

namespace {
constexpr double pi = std::numbers::pi;
}

double MutilatedFunction::operator()(const Vec2& x) const {
  double s = f0 ? f0(x) : 0.0;
  for (const Cut& c : cuts)
    if (heaviside(x[0] * c.n.v[0] + x[1] * c.n.v[1] - c.v) > 0) s += c.f(x);
  return s;
}

double eval_mutilated(const MutilatedFunction& mf, const Vec2& x) { return mf(x); }

MutilatedFunction flip_normals(const MutilatedFunction& mf, const Direction& s) {
  MutilatedFunction out;
  std::vector<ScalarField> absorbed;
  if (mf.f0) absorbed.push_back(mf.f0);
  for (const Cut& c : mf.cuts) {
    if (s.dot(c.n) <= 0) {
      out.cuts.push_back(c);
      continue;
    }
    absorbed.push_back(c.f);
    ScalarField neg = [f = c.f](const Vec2& x) { return -f(x); };
    out.cuts.push_back({neg, Direction{{-c.n.v[0], -c.n.v[1]}}, -c.v});
  }
  out.f0 = [absorbed](const Vec2& x) {
    double s = 0;
    for (const auto& f : absorbed) s += f(x);
    return s;
  };
  return out;
}

void AbsorptionField::validate(const GridSpec& g) const {
  if (!(gamma > 0)) throw EllipticityError("absorption lower bound gamma must be positive");
  for (int i1 = 0; i1 < g.N; ++i1)
    for (int i2 = 0; i2 < g.N; ++i2) {
      const double k = kappa({g.x(i1), g.x(i2)});
      if (!(k >= gamma))
        throw FieldError("absorption sample " + std::to_string(k) + " below gamma " + std::to_string(gamma));
    }
}

GridFunction solve(const MutilatedFunction& f, const AbsorptionField& kappa, const Direction& s,
                   const GridSpec& g, const SolveOptions& opt) {
  g.validate();
  kappa.validate(g);
  const double L = g.L, dt = g.h() * opt.step;
  const std::size_t nc = f.cuts.size();
  GridFunction u(g);
  parallel_for(g.N, [&](int i1) {
    std::vector<double> taus, kap, smooth;
    std::vector<double> parts;  // per node: f_i values
    for (int i2 = 0; i2 < g.N; ++i2) {
      const Vec2 x{g.x(i1), g.x(i2)};
      // backward exit from the box along -s
      double texit = HUGE_VAL;
      for (int c = 0; c < 2; ++c) {
        if (s.v[c] > 0) texit = std::min(texit, (x[c] + L) / s.v[c]);
        if (s.v[c] < 0) texit = std::min(texit, (x[c] - L) / s.v[c]);
      }
      taus.clear();
      const long steps = long(std::floor(texit / dt));
      for (long i = 0; i <= steps; ++i) taus.push_back(double(i) * dt);
      if (texit - taus.back() > 1e-12 * dt) taus.push_back(texit);
      // interface crossings become nodes so no trapezoid cell straddles a jump
      for (const Cut& c : f.cuts) {
        const double sn = s.dot(c.n);
        if (sn == 0) continue;
        const double ts = ((x[0] * c.n.v[0] + x[1] * c.n.v[1]) - c.v) / sn;
        if (ts > 0 && ts < texit) taus.push_back(ts);
      }
      if (nc) {
        std::sort(taus.begin(), taus.end());
        taus.erase(std::unique(taus.begin(), taus.end(),
                               [dt](double a, double b) { return b - a <= 1e-12 * dt; }),
                   taus.end());
      }
      const std::size_t m = taus.size();
      kap.resize(m);
      smooth.resize(m);
      parts.resize(m * nc);
      for (std::size_t i = 0; i < m; ++i) {
        const Vec2 p{x[0] - taus[i] * s.v[0], x[1] - taus[i] * s.v[1]};
        kap[i] = kappa.kappa(p);
        smooth[i] = f.f0 ? f.f0(p) : 0.0;
        for (std::size_t c = 0; c < nc; ++c) parts[i * nc + c] = f.cuts[c].f(p);
      }
      // K(tau) = int_0^tau kappa; the weight e^{-K} is the joint exponent, always <= 0
      double K = 0, acc = 0;
      for (std::size_t i = 0; i + 1 < m; ++i) {
        const double ta = taus[i], tb = taus[i + 1], w = tb - ta;
        double fa = smooth[i], fb = smooth[i + 1];
        if (nc) {
          const double tm = 0.5 * (ta + tb);
          const Vec2 pm{x[0] - tm * s.v[0], x[1] - tm * s.v[1]};
          for (std::size_t c = 0; c < nc; ++c) {
            const Cut& cut = f.cuts[c];
            if (heaviside(pm[0] * cut.n.v[0] + pm[1] * cut.n.v[1] - cut.v) > 0) {
              fa += parts[i * nc + c];
              fb += parts[(i + 1) * nc + c];
            }
          }
        }
        const double Kb = K + 0.5 * w * (kap[i] + kap[i + 1]);
        acc += 0.5 * w * (fa * std::exp(-K) + fb * std::exp(-Kb));
        K = Kb;
      }
      u.at(i1, i2) = acc;
    }
  });
  return u;
}

GridFunction solve(const GridFunction& f, const AbsorptionField& kappa, const Direction& s,
                   const SolveOptions& opt) {
  MutilatedFunction mf;
  mf.f0 = [&f](const Vec2& x) { return interpolate(f, x).real(); };
  return solve(mf, kappa, s, f.grid, opt);
}

GridFunction apply_A(const GridFunction& u, const AbsorptionField& kappa, const Direction& s) {
  const GridSpec& g = u.grid;
  auto spec = fft_forward(u);
  for (int p1 = 0; p1 < g.N; ++p1)
    for (int p2 = 0; p2 < g.N; ++p2) {
      // the Nyquist row has no partner of opposite sign; drop it to keep real data real
      if (p1 == 0 || p2 == 0) {
        spec[std::size_t(p1) * g.N + p2] = 0;
        continue;
      }
      const double sx = s.v[0] * g.xi(p1) + s.v[1] * g.xi(p2);
      spec[std::size_t(p1) * g.N + p2] *= cplx(0, 2 * pi * sx);
    }
  GridFunction out = fft_inverse(g, spec);
  for (int i1 = 0; i1 < g.N; ++i1)
    for (int i2 = 0; i2 < g.N; ++i2) out.at(i1, i2) += kappa.kappa({g.x(i1), g.x(i2)}) * u.at(i1, i2);
  return out;
}

double decay_envelope_check(const GridFunction& u, int n) {
  const GridSpec& g = u.grid;
  double sup = 0;
  for (int i1 = 0; i1 < g.N; ++i1)
    for (int i2 = 0; i2 < g.N; ++i2) {
      const double r2 = 1 + g.x(i1) * g.x(i1) + g.x(i2) * g.x(i2);
      sup = std::max(sup, std::abs(u.at(i1, i2)) * std::pow(r2, n));
    }
  return sup;
}

SplitCheck fourier_split_check(const ScalarField& gfun, const Direction& n, double v, const GridSpec& grid,
                               double outer) {
  grid.validate();
  const Mat2 Rt = rotation_to_e1(n).transpose();
  // g in the frame where the interface normal is e1
  auto gt = [&](const Vec2& y) { return gfun(Rt * y); };
  const double eps = 1e-5;
  // covered fraction of each sample's cell: the transform is an integral, not a point value
  const double h = grid.h();
  auto cutw = [&](double y1) { return std::clamp((y1 - v) / h + 0.5, 0.0, 1.0); };
  GridFunction fl(grid), d1(grid), d2(grid);
  for (int i1 = 0; i1 < grid.N; ++i1)
    for (int i2 = 0; i2 < grid.N; ++i2) {
      const Vec2 y{grid.x(i1), grid.x(i2)};
      const double w = cutw(y[0]);
      if (w == 0) continue;
      fl.at(i1, i2) = w * gt(y);
      d1.at(i1, i2) = w * (gt({y[0] + eps, y[1]}) - gt({y[0] - eps, y[1]})) / (2 * eps);
      d2.at(i1, i2) = w * (gt({y[0], y[1] + eps}) - gt({y[0], y[1] - eps})) / (2 * eps);
    }
  const auto lhs = fft_forward(fl), a1 = fft_forward(d1), a2 = fft_forward(d2);
  // 1-D transform of the trace g(v, .)
  std::vector<cplx> trace(grid.N);
  for (int p = 0; p < grid.N; ++p) {
    cplx acc = 0;
    for (int i = 0; i < grid.N; ++i) {
      const double y2 = grid.x(i);
      acc += gt({v, y2}) * std::exp(cplx(0, -2 * pi * y2 * grid.xi(p)));
    }
    trace[p] = acc * grid.h();
  }
  const double rmax = outer * grid.nyquist();
  double num = 0, den = 0;
  for (int p1 = 0; p1 < grid.N; ++p1)
    for (int p2 = 0; p2 < grid.N; ++p2) {
      const double x1 = grid.xi(p1), x2 = grid.xi(p2), r2 = x1 * x1 + x2 * x2;
      if (r2 <= 1 || r2 > rmax * rmax) continue;
      const std::size_t q = std::size_t(p1) * grid.N + p2;
      const cplx jump = std::exp(cplx(0, -2 * pi * v * x1)) * trace[p2];
      const cplx rhs = cplx(0, -1) / (2 * pi * r2) * (x1 * a1[q] + x2 * a2[q] + x1 * jump);
      num += std::norm(lhs[q] - rhs);
      den += std::norm(lhs[q]);
    }
  SplitCheck out;
  out.lhs_norm = std::sqrt(den);
  out.discrepancy = den > 0 ? std::sqrt(num / den) : 0.0;
  return out;
}

}  // namespace ridgelab
