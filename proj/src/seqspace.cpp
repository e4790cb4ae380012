#include "ridgelab/seqspace.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ridgelab {

namespace {

RearrangedSequence sort_magnitudes(std::vector<double> mags) {
  RearrangedSequence s;
  s.perm.resize(mags.size());
  std::iota(s.perm.begin(), s.perm.end(), std::size_t(0));
  std::stable_sort(s.perm.begin(), s.perm.end(), [&](std::size_t a, std::size_t b) { return mags[a] > mags[b]; });
  s.values.resize(mags.size());
  for (std::size_t n = 0; n < mags.size(); ++n) s.values[n] = mags[s.perm[n]];
  return s;
}

void check_p(double p) {
  if (!(p > 0) || std::isinf(p)) throw std::domain_error("p must lie in (0, inf)");
}

}  // namespace

RearrangedSequence rearrange(const std::vector<double>& values) {
  std::vector<double> mags(values.size());
  std::transform(values.begin(), values.end(), mags.begin(), [](double x) { return std::abs(x); });
  return sort_magnitudes(std::move(mags));
}

// entries() walks windows in (j, l) order and each window's ks in (k1, k2) order, so a stable
// sort on magnitude alone already gives the FrameIndex tie-break
RearrangedSequence rearrange(const CoefficientSet& c) {
  std::vector<double> mags;
  mags.reserve(c.size());
  for (const auto& b : c.blocks)
    for (const cplx& z : b) mags.push_back(std::abs(z));
  return sort_magnitudes(std::move(mags));
}

RearrangedSequence rearrange(const CoefficientSet& c, const WeightRule& rule) {
  std::vector<double> mags;
  mags.reserve(c.size());
  for (int w = 0; w < int(c.blocks.size()); ++w) {
    const Window& win = c.bank->windows()[w];
    const double wt = weight(rule, {win.j, win.l, {0, 0}}, *c.bank);
    for (const cplx& z : c.blocks[w]) mags.push_back(wt * std::abs(z));
  }
  return sort_magnitudes(std::move(mags));
}

double lp_norm(const RearrangedSequence& s, double p) {
  check_p(p);
  double acc = 0;
  // smallest first keeps the sum accurate
  for (auto it = s.values.rbegin(); it != s.values.rend(); ++it) acc += std::pow(*it, p);
  return std::pow(acc, 1 / p);
}

double lorentz_norm(const RearrangedSequence& s, double p, double q) {
  check_p(p);
  if (!(q > 0)) throw std::domain_error("q must be positive");
  if (s.values.empty()) return 0;
  if (std::isinf(q)) return weak_lp_norm(s, p);
  if (q == p) return lp_norm(s, p);
  double acc = 0;
  for (std::size_t n = s.values.size(); n-- > 0;)
    acc += std::pow(s.values[n], q) * std::pow(double(n + 1), q / p - 1);
  return std::pow(acc, 1 / q);
}

double weak_lp_norm(const RearrangedSequence& s, double p) {
  check_p(p);
  // n^{1/p} c_n is only known to about an ulp, since c_n itself is rounded. Take the
  // first index within that resolution of the maximum, so exact power laws give 1.
  std::vector<long double> v(s.values.size());
  long double top = 0;
  for (std::size_t n = 0; n < v.size(); ++n) {
    v[n] = (long double)s.values[n] * std::pow((long double)(n + 1), 1.0L / p);
    top = std::max(top, v[n]);
  }
  const long double tol = 4 * std::numeric_limits<double>::epsilon();
  for (long double x : v)
    if (x >= top * (1 - tol)) return double(x);
  return 0;
}

DecayFit fit_decay_exponent(const RearrangedSequence& s, std::size_t n1, std::size_t n2, double t, double d) {
  if (n1 < 1 || n2 > s.values.size() || n2 < n1 + 9)
    throw std::invalid_argument("fit window must lie inside the sequence and hold at least 10 points");
  DecayFit fit;
  fit.n1 = n1;
  fit.n2 = n2;
  if (!std::isnan(t)) fit.p_star = benchmark_p(t, d);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t cnt = 0;
  for (std::size_t n = n1; n <= n2; ++n) {
    const double c = s.values[n - 1];
    if (c <= 0) break;
    const double x = std::log(double(n)), y = std::log(c);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  if (cnt < 10) {
    // the window runs into exact zeros
    fit.nondecaying = false;
    fit.slope = -std::numeric_limits<double>::infinity();
    fit.p_hat = 0;
    if (!std::isnan(fit.p_star)) fit.delta_star = -fit.p_star;
    return fit;
  }
  const double mx = sx / cnt, my = sy / cnt;
  const double vxx = sxx / cnt - mx * mx;
  fit.slope = (sxy / cnt - mx * my) / vxx;
  double r = 0;
  for (std::size_t n = n1; n < n1 + cnt; ++n) {
    const double e = std::log(s.values[n - 1]) - (my + fit.slope * (std::log(double(n)) - mx));
    r += e * e;
  }
  fit.residual = std::sqrt(r / cnt);
  // a flat sequence fits with slope rounding noise around zero
  if (fit.slope >= -1e-12) {
    fit.nondecaying = true;
    fit.p_hat = std::numeric_limits<double>::quiet_NaN();
    return fit;
  }
  fit.p_hat = -1 / fit.slope;
  if (!std::isnan(fit.p_star)) fit.delta_star = fit.p_hat - fit.p_star;
  return fit;
}

std::vector<NTermPoint> nterm_error_curve(const CoefficientSet& c, const WindowBank& bank, const GridFunction& f,
                                          const std::vector<std::size_t>& Ns, NTermNorm norm,
                                          const WeightRule& rule) {
  if (c.bank != &bank) throw std::invalid_argument("coefficients were not computed with this bank");
  if (c.weighted) throw std::invalid_argument("coefficients are already weighted");
  if (!(f.grid == bank.grid())) throw SpecError("grid function and bank were built for different grids");
  if (!std::is_sorted(Ns.begin(), Ns.end())) throw std::invalid_argument("Ns must be increasing");

  const auto order = norm == NTermNorm::Hs ? rearrange(c, rule) : rearrange(c);
  const auto all = c.entries();
  const GridSpec& g = bank.grid();
  const auto target = fft_forward(f);
  std::vector<cplx> approx(target.size(), cplx(0));

  std::vector<NTermPoint> out;
  std::size_t used = 0;
  for (std::size_t N : Ns) {
    const std::size_t upto = std::min(N, all.size());
    if (upto > used) {
      std::vector<CoefficientEntry> picked;
      picked.reserve(upto - used);
      for (std::size_t n = used; n < upto; ++n) picked.push_back(all[order.perm[n]]);
      synthesize_into(approx, bank, picked);
      used = upto;
    }
    NTermPoint pt;
    pt.n = N;
    double e = 0;
    for (std::size_t i = 0; i < target.size(); ++i) e += std::norm(target[i] - approx[i]);
    pt.err_l2 = std::sqrt(e) * g.dxi();
    if (norm == NTermNorm::Hs) {
      std::vector<cplx> res(target.size());
      for (std::size_t i = 0; i < res.size(); ++i) res[i] = target[i] - approx[i];
      pt.err_hs = hs_norm_via_weights(analyze(fft_inverse(g, res), bank), rule);
    }
    out.push_back(pt);
  }
  return out;
}

void write_nterm_csv(const std::vector<NTermPoint>& curve, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  os.precision(17);
  os << "N,error_L2,error_Hs\n";
  for (const auto& p : curve) {
    os << p.n << ',' << p.err_l2 << ',';
    if (!std::isnan(p.err_hs)) os << p.err_hs;
    os << '\n';
  }
}

}  // namespace ridgelab
