#pragma once
#include <functional>
#include <stdexcept>
#include <vector>

namespace ridgelab {

class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double best, double err)
      : std::runtime_error(what), best_estimate(best), error_estimate(err) {}
  double best_estimate;
  double error_estimate;
};

struct QuadResult {
  double value = 0;
  double error = 0;
  int intervals = 0;
};

// Globally adaptive Gauss-Kronrod 7-15 on [lo, hi] split at the sorted breakpoints.
// Stops when error <= max(abs_tol, rel_tol*|value|). Throws AccuracyError past max_intervals.
QuadResult gk_adaptive(const std::function<double(double)>& f, double lo, double hi,
                       std::vector<double> breaks, double rel_tol, double abs_tol = 0,
                       int max_intervals = 4000);

// Integral over the real line through x = S u / (1 - u^2); interior points of interest
// (peaks, kinks) are mapped to breakpoints in u.
QuadResult integrate_real_line(const std::function<double(double)>& f, double scale,
                               const std::vector<double>& points, double rel_tol,
                               int max_intervals = 4000);

// Integral over [0, inf) through x = S u / (1 - u).
QuadResult integrate_half_line(const std::function<double(double)>& f, double scale,
                               const std::vector<double>& points, double rel_tol,
                               int max_intervals = 4000);

}  // namespace ridgelab
