#include "ridgelab/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ridgelab {

Direction Direction::from(const Vec2& v) {
  double r = std::hypot(v[0], v[1]);
  if (!(std::abs(r - 1.0) <= 1e-12))
    throw GeometryError("direction is not a unit vector (norm " + std::to_string(r) + ")");
  return Direction{v};
}

Direction Direction::from_angle(double theta) noexcept {
  return Direction{{std::cos(theta), std::sin(theta)}};
}

double Direction::angle() const noexcept { return std::atan2(v[1], v[0]); }

double Direction::abs_sin(const Direction& o) const noexcept {
  return std::abs(v[0] * o.v[1] - v[1] * o.v[0]);
}

int directions_at(int j) { return 1 << (j + 1); }

std::vector<Direction> sphere_sampling(int j, int d) {
  if (d != 2) throw GeometryError("unsupported dimension " + std::to_string(d));
  if (j < 0) throw GeometryError("negative scale");
  const int L = directions_at(j);
  std::vector<Direction> out;
  out.reserve(L);
  for (int l = 0; l < L; ++l) {
    // exact values on the axes keep the tables symmetric
    switch ((4 * l) % L == 0 ? (4 * l) / L : -1) {
      case 0: out.push_back(Direction{{1, 0}}); continue;
      case 1: out.push_back(Direction{{0, 1}}); continue;
      case 2: out.push_back(Direction{{-1, 0}}); continue;
      case 3: out.push_back(Direction{{0, -1}}); continue;
      default: break;
    }
    out.push_back(Direction::from_angle(2.0 * std::numbers::pi * l / L));
  }
  return out;
}

Mat2 rotation_to_e1(const Direction& s) {
  Direction::from(s.v);
  const double c = s.v[0], sn = s.v[1];
  return Mat2{c, sn, -sn, c};
}

Vec2 AnisotropicMap::apply(const Vec2& k) const {
  const double sc = std::ldexp(1.0, -j);
  return R.transpose() * Vec2{sc * k[0], k[1]};
}

Vec2 AnisotropicMap::apply_inv(const Vec2& x) const {
  Vec2 y = R * x;
  return {std::ldexp(y[0], j), y[1]};
}

int shell_of(int j, double s) {
  // 2^-r <= s < 2^{-r+1}; ties go to the smaller r, the remainder to r = j
  for (int r = 1; r < j; ++r)
    if (s >= std::ldexp(1.0, -r)) return r;
  return j;
}

std::vector<int> angle_shell(int j, int r, const Direction& n, const std::vector<Direction>& dirs) {
  if (j < 1 || r < 1 || r > j) throw GeometryError("shell index out of range");
  std::vector<int> out;
  for (int l = 0; l < int(dirs.size()); ++l)
    if (shell_of(j, dirs[l].abs_sin(n)) == r) out.push_back(l);
  return out;
}

Vec2 LocSpaceFrame::t(const IVec2& k) const {
  Vec2 un = U.apply_inv(normal.v);
  return {k[0] - offset * un[0], k[1] - offset * un[1]};
}

LocSpaceFrame loc_space_frame(int j, int l, const Direction& n, double v) {
  const auto dirs = sphere_sampling(j);
  if (l < 0 || l >= int(dirs.size())) throw GeometryError("direction index out of range");
  LocSpaceFrame f;
  f.j = j;
  f.l = l;
  f.normal = n;
  f.offset = v;
  f.U = AnisotropicMap(j, dirs[l]);
  f.phi = std::remainder(dirs[l].angle() - n.angle(), 2.0 * std::numbers::pi);
  const double c = std::cos(f.phi), s = std::sin(f.phi), S = std::ldexp(1.0, j);
  f.a = std::sqrt(S * S * s * s + c * c);
  f.V = Mat2{c / f.a, -S * s / f.a, S * s / (f.a * f.a), c / (f.a * f.a)};
  f.abs_sin_theta = dirs[l].abs_sin(n);
  return f;
}

bool tail_membership(const LocSpaceFrame& f, const IVec2& k, double delta) {
  if (!(delta > 0)) throw GeometryError("tail parameter must be positive");
  constexpr double d = 2.0;
  Vec2 r = f.rho(f.t(k));
  double lhs = std::hypot(r[0], r[1]);
  double base = std::ldexp(f.abs_sin_theta, f.j + 1);
  double rhs = std::pow(base, delta / d) + std::sqrt(d) / 2.0;
  return lhs > rhs;
}

}  // namespace ridgelab
