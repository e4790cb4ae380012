#include "ridgelab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace ridgelab {

namespace {

// Kronrod 15-point abscissae and weights, Gauss 7-point weights on the even nodes
constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                           0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double a, b, val, err;
  bool operator<(const Piece& o) const { return err < o.err; }
};

Piece gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double fc = f(c);
  double resk = fc * wgk[7], resg = fc * wg[3];
  for (int i = 0; i < 7; ++i) {
    double x = h * xgk[i];
    double s = f(c - x) + f(c + x);
    resk += wgk[i] * s;
    if (i % 2 == 1) resg += wg[i / 2] * s;
  }
  return {a, b, resk * h, std::abs((resk - resg) * h)};
}

}  // namespace

QuadResult gk_adaptive(const std::function<double(double)>& f, double lo, double hi,
                       std::vector<double> breaks, double rel_tol, double abs_tol,
                       int max_intervals) {
  breaks.push_back(lo);
  breaks.push_back(hi);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  std::priority_queue<Piece> heap;
  double val = 0, err = 0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i] < lo || breaks[i + 1] > hi) continue;
    Piece p = gk15(f, breaks[i], breaks[i + 1]);
    val += p.val;
    err += p.err;
    heap.push(p);
  }
  int n = int(heap.size());
  while (err > std::max(abs_tol, rel_tol * std::abs(val))) {
    if (n >= max_intervals)
      throw AccuracyError("quadrature did not reach tolerance", val, err);
    Piece p = heap.top();
    heap.pop();
    double m = 0.5 * (p.a + p.b);
    if (!(m > p.a && m < p.b)) throw AccuracyError("quadrature interval underflow", val, err);
    Piece l = gk15(f, p.a, m), r = gk15(f, m, p.b);
    val += l.val + r.val - p.val;
    err += l.err + r.err - p.err;
    heap.push(l);
    heap.push(r);
    ++n;
    // refresh the running sums now and then to shed cancellation drift
    if (n % 256 == 0) {
      auto copy = heap;
      val = err = 0;
      while (!copy.empty()) {
        val += copy.top().val;
        err += copy.top().err;
        copy.pop();
      }
    }
  }
  return {val, err, n};
}

QuadResult integrate_real_line(const std::function<double(double)>& f, double S,
                               const std::vector<double>& points, double rel_tol,
                               int max_intervals) {
  auto g = [&](double u) {
    double w = 1.0 - u * u;
    return f(S * u / w) * S * (1.0 + u * u) / (w * w);
  };
  std::vector<double> ub;
  for (double x : points) {
    double y = x / S;
    ub.push_back(y == 0 ? 0.0 : (std::sqrt(1.0 + 4.0 * y * y) - 1.0) / (2.0 * y));
  }
  return gk_adaptive(g, -1.0, 1.0, ub, rel_tol, 0.0, max_intervals);
}

QuadResult integrate_half_line(const std::function<double(double)>& f, double S,
                               const std::vector<double>& points, double rel_tol,
                               int max_intervals) {
  auto g = [&](double u) {
    double w = 1.0 - u;
    return f(S * u / w) * S / (w * w);
  };
  std::vector<double> ub;
  for (double x : points)
    if (x > 0) ub.push_back(x / (S + x));
  return gk_adaptive(g, 0.0, 1.0, ub, rel_tol, 0.0, max_intervals);
}

}  // namespace ridgelab
