#pragma once
#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "ridgelab/geometry.hpp"
#include "ridgelab/grid.hpp"

namespace ridgelab {

// Polynomial smoothstep of continuity C^order on [0,1]; beta(t) + beta(1-t) = 1.
double smoothstep(int order, double t);

struct BankConfig {
  int J = 3;
  GridSpec grid;
  // lattice spacing along the rotated axes for j >= 1, and for the low-pass
  Vec2 sigma{0.5, 0.125};
  Vec2 sigma0{0.25, 0.25};
  // transition profile "poly:<order>"
  int order = 4;
  // angular transition half-width as a fraction of the direction spacing
  double eps = 0.125;

  std::string profile() const { return "poly:" + std::to_string(order); }
};

// one (j, l) window restricted to the grid, plus its translation lattice
struct Window {
  int j = 0;
  int l = 0;
  Direction dir;
  Mat2 R;
  Vec2 sigma;
  // integer dual lattice (frequency index units), columns v1 = (V[0], V[2]), v2 = (V[1], V[3]);
  // the closest grid-compatible stand-in for R^T D_{2^j} diag(1/sigma)
  std::array<long, 4> V{1, 0, 0, 1};
  long det = 1;
  double period = 1;
  // flat indices into the centred spectrum and normalized window values
  std::vector<int> idx;
  std::vector<double> val;
  // one representative per lattice coset, x_k inside [-L, L)^2, sorted by (k1, k2)
  std::vector<IVec2> ks;

  // x_k = 2L V^{-T} k, close to R^T (2^-j sigma1 k1, sigma2 k2)
  Vec2 position(const IVec2& k) const;
};

class WindowBank {
 public:
  explicit WindowBank(const BankConfig& cfg);

  const BankConfig& config() const { return cfg_; }
  const GridSpec& grid() const { return cfg_.grid; }
  int J() const { return cfg_.J; }
  const std::vector<Window>& windows() const { return windows_; }
  const Window& window(int j, int l) const { return windows_.at(offset_.at(j) + l); }
  int window_index(int j, int l) const { return offset_.at(j) + l; }
  int directions(int j) const { return j == 0 ? 1 : directions_at(j); }
  const Direction& direction(int j, int l) const { return window(j, l).dir; }
  // max over grid points with |xi| <= 2^J of |sum psi^2 - 1|
  double partition_defect() const { return defect_; }
  std::size_t coefficient_count() const;

  nlohmann::json describe() const;

 private:
  BankConfig cfg_;
  std::vector<Window> windows_;
  std::vector<int> offset_;
  double defect_ = 0;
};

WindowBank build_window_bank(const BankConfig& cfg);

// analytic (unnormalized) window value at an arbitrary frequency
double window_value(const BankConfig& cfg, int j, int l, const Vec2& xi);
double window_value(const WindowBank& bank, int j, int l, const Vec2& xi);

struct WeightRule {
  Direction s;
};

// 1 + 2^j |s . s_{j,l}|
double weight(const WeightRule& rule, const FrameIndex& lam, const WindowBank& bank);

// sup_x |phi_lambda(x)| <U^-1 (x - x_k)>^{2m} 2^{-j/2}; with modified the ridgelet is filtered
// by xi_1 / |xi|^2 and the result scaled by 2^{j/2}. Evaluated on a periodic grid g.
double ridgelet_space_decay_check(const BankConfig& cfg, const FrameIndex& lam, int m,
                                  const GridSpec& g, bool modified = false);

}  // namespace ridgelab
