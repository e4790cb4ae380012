#pragma once
#include <string>
#include <vector>

#include "ridgelab/frame.hpp"
#include "ridgelab/grid.hpp"

namespace ridgelab {

struct CoefficientEntry {
  FrameIndex index;
  cplx value;
  // position of the entry inside CoefficientSet::blocks
  int window = 0;
  int slot = 0;
};

// Coefficients for every window of a bank; blocks[w][i] belongs to windows()[w].ks[i].
struct CoefficientSet {
  const WindowBank* bank = nullptr;
  std::vector<std::vector<cplx>> blocks;
  bool weighted = false;

  static CoefficientSet zeros(const WindowBank& bank);
  std::size_t size() const;
  double l2_norm() const;
  FrameIndex index(int window, int slot) const;
  std::vector<CoefficientEntry> entries() const;
};

// c_lambda = <f, phi_lambda> with phi_lambda = 2^{-j/2} sqrt(s1 s2) T_{x_k} psi_{j,l}
CoefficientSet analyze(const GridFunction& f, const WindowBank& bank);
// same values from explicit per-coefficient phase sums (slow; small grids)
CoefficientSet analyze_direct(const GridFunction& f, const WindowBank& bank);
// adjoint of analyze
GridFunction synthesize(const CoefficientSet& c, const WindowBank& bank);
// adds selected coefficients into a centred spectrum; cheap when the selection is small
void synthesize_into(std::vector<cplx>& spec, const WindowBank& bank,
                     const std::vector<CoefficientEntry>& picked);

// |sum |c|^2 / ||f||^2 - 1|
double parseval_defect(const GridFunction& f, const WindowBank& bank);
double hs_norm_via_weights(const CoefficientSet& c, const WeightRule& rule);

// columns j, l, k1, k2, re, im
void write_coefficients_csv(const CoefficientSet& c, const std::string& path);

// multiplies the spectrum of f by sum_{j < J} psi^2. The result lives where the partition is
// exactly one, so synthesize(analyze(.)) reproduces it; the top scale only rolls off.
GridFunction band_limit(const GridFunction& f, const WindowBank& bank);

}  // namespace ridgelab
