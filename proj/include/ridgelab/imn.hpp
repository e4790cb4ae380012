#pragma once
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ridgelab/exact.hpp"
#include "ridgelab/quadrature.hpp"

namespace ridgelab {

struct ImnParams {
  int m = 1, n = 1;
  double a = 1, b = 0, c = 1, d = 1;

  void validate() const;
};

// c^{m,n}_{i,j} for 0 <= i,j <= 2(m+n)-3; entries are dyadic rationals
struct CmnTable {
  int m = 0, n = 0;
  int K = 0;  // 2(m+n)-3
  std::vector<ExactScalar> c;  // (K+1)^2, row-major in i

  const ExactScalar& at(int i, int j) const { return c[i * (K + 1) + j]; }
};

// Prop. 6.9 double sum
ExactScalar cmn_coefficient(int m, int n, int i, int j);
// seven-fold sum, used only to cross-check cmn_coefficient
ExactScalar cmn_coefficient_long(int m, int n, int i, int j);
// cached table built from cmn_coefficient
const CmnTable& cmn_table(int m, int n);
// the three vanishing conditions: i+j odd, i+j <= K, (i >= 2m-1 or j >= 2n-1)
bool cmn_pattern(int m, int n, int i, int j);

double imn_closed_form(const ImnParams& p);
QuadResult imn_quadrature(const ImnParams& p, double tol);
double imn_integrand(const ImnParams& p, double x);

// (m-1, n-1) Taylor coefficient of the generating function, in binary floating
// point with `bits` of mantissa
double imn_generating_series(const ImnParams& p, unsigned bits = 320);
// every I_{m,n} with m <= M, n <= N from one series expansion; index [m-1][n-1]
std::vector<std::vector<double>> imn_series_table(int M, int N, double a, double b, double c,
                                                  double d, unsigned bits = 320);

enum class BoundVariant { best, simple };
double upper_bound(const ImnParams& p, BoundVariant v, bool clamp_a = false);
double grafakos_bound(const ImnParams& p);

double single_factor_integral(int m, double a, double c);

struct ConvBound {
  double lhs = 0;
  double rhs = 0;
  // same two terms with c^{2m-k}, d^{2n-k}: scales like lhs under (c, d, t) -> s (c, d, t)
  // and reduces to the one-dimensional bound at k = 1
  double rhs_homogeneous = 0;
};
ConvBound conv_bound_check(int k, int m, int n, double c, double d, const std::vector<double>& t,
                           double tol = 1e-8);

struct PositivityReport {
  int m_max = 0, n_max = 0;
  long entries = 0;
  long nonzero = 0;
  long pattern_count = 0;
  struct Neg {
    int m, n, i, j;
    double value;
  };
  std::vector<Neg> negatives;
};
PositivityReport positivity_scan(int m_max, int n_max);

}  // namespace ridgelab
