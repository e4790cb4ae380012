#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "ridgelab/xform.hpp"

namespace ridgelab {

struct RearrangedSequence {
  std::vector<double> values;     // nonincreasing magnitudes
  std::vector<std::size_t> perm;  // values[n] = |input[perm[n]]|
};

// magnitude descending; ties keep input order
RearrangedSequence rearrange(const std::vector<double>& values);
// ties broken by (j, l, k); perm indexes CoefficientSet::entries()
RearrangedSequence rearrange(const CoefficientSet& c);
// same, ordered by the weighted magnitude w_lambda |c_lambda|
RearrangedSequence rearrange(const CoefficientSet& c, const WeightRule& rule);

double lp_norm(const RearrangedSequence& s, double p);
// q = inf gives the weak norm
double lorentz_norm(const RearrangedSequence& s, double p, double q);
double weak_lp_norm(const RearrangedSequence& s, double p);

struct DecayFit {
  double slope = 0;
  double p_hat = std::numeric_limits<double>::quiet_NaN();
  double residual = 0;  // rms of the log-log fit
  std::size_t n1 = 0, n2 = 0;
  double p_star = std::numeric_limits<double>::quiet_NaN();
  double delta_star = std::numeric_limits<double>::quiet_NaN();  // p_hat - p_star
  bool nondecaying = false;
};

inline double benchmark_p(double t, double d) { return 1 / (t / d + 0.5); }

// least-squares slope of log c*_n against log n for n1 <= n <= n2 (1-based); t, d feed p*
DecayFit fit_decay_exponent(const RearrangedSequence& s, std::size_t n1 = 100, std::size_t n2 = 10000,
                            double t = std::numeric_limits<double>::quiet_NaN(), double d = 2);

enum class NTermNorm { L2, Hs };

struct NTermPoint {
  std::size_t n = 0;
  double err_l2 = 0;
  double err_hs = std::numeric_limits<double>::quiet_NaN();
};

// Keeps the N largest coefficients (weighted ones for Hs) and measures f - f_N.
// The Hs error reanalyzes the residual and is therefore much slower.
std::vector<NTermPoint> nterm_error_curve(const CoefficientSet& c, const WindowBank& bank, const GridFunction& f,
                                          const std::vector<std::size_t>& Ns, NTermNorm norm = NTermNorm::L2,
                                          const WeightRule& rule = {});

void write_nterm_csv(const std::vector<NTermPoint>& curve, const std::string& path);

}  // namespace ridgelab
