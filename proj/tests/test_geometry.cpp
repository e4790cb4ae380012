#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "ridgelab/geometry.hpp"

using namespace ridgelab;
using std::numbers::pi;

TEST_CASE("sphere sampling") {
  auto d0 = sphere_sampling(0);
  REQUIRE(d0.size() == 2);
  CHECK(d0[0].v[0] == 1.0);
  CHECK(d0[1].v[0] == -1.0);
  CHECK(d0[1].v[1] == 0.0);

  auto d2 = sphere_sampling(2);
  REQUIRE(d2.size() == 8);
  for (int l = 0; l < 8; ++l) {
    double gap = std::remainder(d2[(l + 1) % 8].angle() - d2[l].angle(), 2 * pi);
    CHECK(gap == doctest::Approx(pi / 4).epsilon(1e-14));
  }
  for (auto& s : sphere_sampling(3)) CHECK(std::abs(std::hypot(s.v[0], s.v[1]) - 1) <= 1e-15);
  CHECK_THROWS_AS(sphere_sampling(2, 3), GeometryError);
}

TEST_CASE("rotation to e1") {
  Mat2 I = rotation_to_e1(Direction{{1, 0}});
  CHECK(I.a00 == 1);
  CHECK(I.a01 == 0);
  CHECK(I.a10 == 0);
  CHECK(I.a11 == 1);
  Mat2 R = rotation_to_e1(Direction{{0, 1}});
  CHECK(R.a00 == 0);
  CHECK(R.a01 == 1);
  CHECK(R.a10 == -1);
  CHECK(R.a11 == 0);
  CHECK_THROWS_AS(rotation_to_e1(Direction{{1, 1}}), GeometryError);

  std::mt19937_64 g(11);
  std::uniform_real_distribution<double> u(-pi, pi);
  for (int it = 0; it < 1000; ++it) {
    Direction s = Direction::from_angle(u(g));
    Mat2 Rs = rotation_to_e1(s);
    Vec2 e = Rs * s.v;
    CHECK(std::hypot(e[0] - 1, e[1]) <= 1e-12);
    Mat2 Rt = Rs.transpose();
    CHECK(std::abs(Rt.a00 * Rs.a00 + Rt.a01 * Rs.a10 - 1) <= 1e-12);
    CHECK(std::abs(Rt.a00 * Rs.a01 + Rt.a01 * Rs.a11) <= 1e-12);
    CHECK(std::abs(Rt.a10 * Rs.a01 + Rt.a11 * Rs.a11 - 1) <= 1e-12);
  }
}

TEST_CASE("anisotropic map") {
  AnisotropicMap U(1, Direction{{1, 0}});
  Vec2 x = U.apply(IVec2{2, 3});
  CHECK(x[0] == 1.0);
  CHECK(x[1] == 3.0);
  std::mt19937_64 g(3);
  std::uniform_int_distribution<long> ki(-10, 10);
  for (int j = 0; j <= 8; ++j)
    for (auto& s : sphere_sampling(j)) {
      AnisotropicMap V(j, s);
      Vec2 z = V.apply(IVec2{0, 0});
      CHECK(z[0] == 0.0);
      CHECK(z[1] == 0.0);
      IVec2 k{ki(g), ki(g)};
      Vec2 back = V.apply_inv(V.apply(k));
      CHECK(std::abs(back[0] - k[0]) <= 1e-12);
      CHECK(std::abs(back[1] - k[1]) <= 1e-12);
      // e1 in rotated coordinates is scaled by 2^-j
      Vec2 r = V.R * V.apply(Vec2{1, 0});
      CHECK(r[0] == doctest::Approx(std::ldexp(1.0, -j)).epsilon(1e-14));
    }
}

TEST_CASE("angle shells") {
  auto d3 = sphere_sampling(3);
  Direction e1{{1, 0}};
  auto s = angle_shell(3, 2, e1, d3);
  CHECK(s == std::vector<int>{1, 7, 9, 15});

  // r = j keeps |sin| < 2^{-j+1}, which includes the aligned directions
  auto d2 = sphere_sampling(2);
  CHECK(angle_shell(2, 2, e1, d2) == std::vector<int>{0, 4});

  std::mt19937_64 g(5);
  std::uniform_real_distribution<double> u(-pi, pi);
  for (int j = 1; j <= 7; ++j) {
    auto dirs = sphere_sampling(j);
    for (int it = 0; it < 20; ++it) {
      Direction n = Direction::from_angle(u(g));
      std::vector<int> seen(dirs.size(), 0);
      for (int r = 1; r <= j; ++r)
        for (int l : angle_shell(j, r, n, dirs)) {
          ++seen[l];
          double sn = dirs[l].abs_sin(n);
          if (r < j) {
            CHECK(sn >= std::ldexp(1.0, -r));
            CHECK(sn <= std::ldexp(1.0, -r + 1));
          } else {
            CHECK(sn <= std::ldexp(1.0, -j + 1));
          }
        }
      for (int c : seen) CHECK(c == 1);
    }
  }
  CHECK_THROWS_AS(angle_shell(3, 0, e1, d3), GeometryError);
  CHECK_THROWS_AS(angle_shell(3, 4, e1, d3), GeometryError);
}

TEST_CASE("localisation frame") {
  auto f0 = loc_space_frame(3, 0, Direction{{1, 0}}, 0.0);
  CHECK(f0.a == doctest::Approx(1.0));
  CHECK(f0.V.a00 == doctest::Approx(1.0));
  CHECK(f0.V.a11 == doctest::Approx(1.0));
  // phi = pi/2: direction l = 4 of 16 is e2
  auto f1 = loc_space_frame(3, 4, Direction{{1, 0}}, 0.0);
  CHECK(f1.a == doctest::Approx(8.0).epsilon(1e-14));

  std::mt19937_64 g(13);
  std::uniform_real_distribution<double> u(-pi, pi), off(-2, 2), kk(-50, 50);
  for (int it = 0; it < 1000; ++it) {
    int j = it % 9;
    int l = int(g() % directions_at(j));
    auto f = loc_space_frame(j, l, Direction::from_angle(u(g)), off(g));
    CHECK(std::abs(f.V.det() * f.a - 1) <= 1e-10);
    IVec2 k{long(kk(g)), long(kk(g))};
    Vec2 t = f.t(k), r = f.rho(t);
    double lhs = r[0] * r[0] + f.a * f.a * r[1] * r[1], rhs = t[0] * t[0] + t[1] * t[1];
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, rhs));
  }
}

TEST_CASE("tail membership") {
  auto f = loc_space_frame(2, 0, Direction{{1, 0}}, 0.0);
  CHECK(f.abs_sin_theta == 0.0);
  CHECK_FALSE(tail_membership(f, {0, 0}, 1.0));
  CHECK(tail_membership(f, {1, 0}, 1.0));
  CHECK(tail_membership(f, {0, -1}, 1.0));
  CHECK_THROWS_AS(tail_membership(f, {0, 0}, 0.0), GeometryError);

  // ring of k at j = 4 against the formula written out directly
  Direction n = Direction::from_angle(0.3);
  for (int l = 0; l < directions_at(4); ++l) {
    auto F = loc_space_frame(4, l, n, 0.37);
    for (long k1 = -30; k1 <= 30; ++k1)
      for (long k2 = -30; k2 <= 30; ++k2) {
        double ph = F.phi, S = 16, a = std::sqrt(S * S * std::sin(ph) * std::sin(ph) + std::cos(ph) * std::cos(ph));
        Vec2 Un = F.U.apply_inv(n.v);
        double t1 = k1 - 0.37 * Un[0], t2 = k2 - 0.37 * Un[1];
        double r1 = (std::cos(ph) * t1 - S * std::sin(ph) * t2) / a;
        double r2 = (S * std::sin(ph) * t1 + std::cos(ph) * t2) / (a * a);
        double thr = std::sqrt(32 * F.abs_sin_theta) + std::sqrt(2.0) / 2;
        bool want = std::hypot(r1, r2) > thr;
        CHECK(tail_membership(F, {k1, k2}, 1.0) == want);
      }
  }
}
