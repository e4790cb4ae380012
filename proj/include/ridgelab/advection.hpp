#pragma once
#include <functional>
#include <stdexcept>
#include <vector>

#include "ridgelab/geometry.hpp"
#include "ridgelab/grid.hpp"

namespace ridgelab {

using ScalarField = std::function<double(const Vec2&)>;

// H = indicator of (0, inf); H(0) = 0
inline double heaviside(double t) { return t > 0 ? 1.0 : 0.0; }

struct Cut {
  ScalarField f;
  Direction n;
  double v = 0;
};

// f0(x) + sum_i f_i(x) H(x . n_i - v_i)
struct MutilatedFunction {
  ScalarField f0;
  std::vector<Cut> cuts;

  double operator()(const Vec2& x) const;
};

double eval_mutilated(const MutilatedFunction& mf, const Vec2& x);

// rewrites every cut with s . n > 0 as f_i - f_i H(v - x . n), so all normals face against s
MutilatedFunction flip_normals(const MutilatedFunction& mf, const Direction& s);

class EllipticityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class FieldError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct AbsorptionField {
  ScalarField kappa;
  double gamma = 1;

  static AbsorptionField constant(double k) { return {[k](const Vec2&) { return k; }, k}; }
  // throws EllipticityError for gamma <= 0 and FieldError if a grid sample drops below gamma
  void validate(const GridSpec& g) const;
};

struct SolveOptions {
  // ray step as a fraction of the grid spacing
  double step = 1.0;
};

// u = S[f] for s . grad u + kappa u = f, integrating along the characteristic through every
// grid point back to the inflow edge of the box
GridFunction solve(const MutilatedFunction& f, const AbsorptionField& kappa, const Direction& s,
                   const GridSpec& g, const SolveOptions& opt = {});
// grid source, bilinearly interpolated along the rays (real part only)
GridFunction solve(const GridFunction& f, const AbsorptionField& kappa, const Direction& s,
                   const SolveOptions& opt = {});

// s . grad u (spectral) + kappa u
GridFunction apply_A(const GridFunction& u, const AbsorptionField& kappa, const Direction& s);

// sup |u(x)| <x>^{2n}
double decay_envelope_check(const GridFunction& u, int n);

struct SplitCheck {
  double discrepancy = 0;
  double lhs_norm = 0;
};

// Both sides of the half-space Fourier split for f = H(x . n - v) g, evaluated in the
// frame where n is e1; relative L2 discrepancy over 1 < |xi| < outer * nyquist.
SplitCheck fourier_split_check(const ScalarField& g, const Direction& n, double v, const GridSpec& grid,
                               double outer = 0.5);

}  // namespace ridgelab
