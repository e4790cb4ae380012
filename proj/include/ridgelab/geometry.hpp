#pragma once
#include <array>
#include <stdexcept>
#include <vector>

namespace ridgelab {

using Vec2 = std::array<double, 2>;
using IVec2 = std::array<long, 2>;

struct Mat2 {
  double a00 = 1, a01 = 0, a10 = 0, a11 = 1;

  Vec2 operator*(const Vec2& v) const { return {a00 * v[0] + a01 * v[1], a10 * v[0] + a11 * v[1]}; }
  Mat2 transpose() const { return {a00, a10, a01, a11}; }
  double det() const { return a00 * a11 - a01 * a10; }
};

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Direction {
  Vec2 v{1.0, 0.0};

  // throws GeometryError unless |v| = 1 within 1e-12
  static Direction from(const Vec2& v);
  static Direction from_angle(double theta) noexcept;
  double angle() const noexcept;
  double dot(const Direction& o) const noexcept { return v[0] * o.v[0] + v[1] * o.v[1]; }
  // |sin| of the angle between the two directions
  double abs_sin(const Direction& o) const noexcept;
};

struct FrameIndex {
  int j = 0;
  int l = 0;
  IVec2 k{0, 0};

  auto operator<=>(const FrameIndex&) const = default;
};

// L_j = 2^{j+1} equispaced directions, theta_l = 2 pi l / L_j. Only d = 2.
std::vector<Direction> sphere_sampling(int j, int d = 2);

int directions_at(int j);

// planar rotation by -theta(s); R s = e1
Mat2 rotation_to_e1(const Direction& s);

struct AnisotropicMap {
  int j = 0;
  Mat2 R;

  AnisotropicMap() = default;
  AnisotropicMap(int j_, const Direction& s) : j(j_), R(rotation_to_e1(s)) {}

  // R^T D_{2^-j} k
  Vec2 apply(const Vec2& k) const;
  Vec2 apply(const IVec2& k) const { return apply(Vec2{double(k[0]), double(k[1])}); }
  // D_{2^j} R x
  Vec2 apply_inv(const Vec2& x) const;
};

std::vector<int> angle_shell(int j, int r, const Direction& n, const std::vector<Direction>& dirs);
// shell index r in 1..j for a single |sin| value
int shell_of(int j, double abs_sin);

struct LocSpaceFrame {
  int j = 0;
  int l = 0;
  double phi = 0;
  double a = 1;
  Mat2 V;
  Direction normal;
  double offset = 0;
  AnisotropicMap U;
  double abs_sin_theta = 0;

  Vec2 t(const IVec2& k) const;
  Vec2 rho(const Vec2& t) const { return V * t; }
};

LocSpaceFrame loc_space_frame(int j, int l, const Direction& n, double v);

bool tail_membership(const LocSpaceFrame& f, const IVec2& k, double delta);

}  // namespace ridgelab
