#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "ridgelab/seqspace.hpp"

using namespace ridgelab;

TEST_CASE("decreasing rearrangement") {
  const auto r = rearrange(std::vector<double>{0.1, -3, 2});
  CHECK(r.values == std::vector<double>{3, 2, 0.1});
  CHECK(r.perm == std::vector<std::size_t>{1, 2, 0});
  const auto eq = rearrange(std::vector<double>{1, -1, 1, 1});
  CHECK(eq.perm == std::vector<std::size_t>{0, 1, 2, 3});
  const auto again = rearrange(r.values);
  CHECK(again.values == r.values);
  CHECK(rearrange(std::vector<double>{}).values.empty());
}

TEST_CASE("Lorentz norms") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> v(2000);
  for (double& x : v) x = u(rng);
  const auto s = rearrange(v);
  double l2 = 0;
  for (double x : v) l2 += x * x;
  CHECK(lorentz_norm(s, 2, 2) == doctest::Approx(std::sqrt(l2)).epsilon(1e-12));
  CHECK(lp_norm(s, 2) == doctest::Approx(std::sqrt(l2)).epsilon(1e-12));
  CHECK(lorentz_norm(s, 1.5, INFINITY) == weak_lp_norm(s, 1.5));
  CHECK(weak_lp_norm(RearrangedSequence{}, 1) == 0);
  CHECK(lorentz_norm(RearrangedSequence{}, 1, 2) == 0);
  CHECK_THROWS_AS(lorentz_norm(s, 0, 1), std::domain_error);
  CHECK_THROWS_AS(lorentz_norm(s, 1, 0), std::domain_error);

  for (double p : {0.5, 1.0, 2.0, 3.0}) {
    std::vector<double> w(10000);
    for (std::size_t n = 0; n < w.size(); ++n) w[n] = std::pow(double(n + 1), -1 / p);
    CHECK(weak_lp_norm(rearrange(w), p) == 1.0);
  }
  // weak <= max(1, (q/p)^{1/q}) ||.||_{p,q}, and the q-scale is ordered on power laws
  for (double p : {0.8, 1.0, 2.0})
    for (double a : {0.6, 1.0, 1.7}) {
      std::vector<double> w(5000);
      for (std::size_t n = 0; n < w.size(); ++n) w[n] = std::pow(double(n + 1), -a);
      const auto r = rearrange(w);
      for (double q : {0.5, 1.0, 2.0, 4.0})
        CHECK(weak_lp_norm(r, p) <= std::max(1.0, std::pow(q / p, 1 / q)) * lorentz_norm(r, p, q) * (1 + 1e-12));
    }
}

TEST_CASE("decay exponent fit") {
  std::vector<double> w(20000);
  for (std::size_t n = 0; n < w.size(); ++n) w[n] = std::pow(double(n + 1), -2.0);
  const auto f = fit_decay_exponent(rearrange(w), 100, 10000, 2, 2);
  CHECK(f.slope == doctest::Approx(-2).epsilon(1e-10));
  CHECK(f.p_hat == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(f.p_star == doctest::Approx(2.0 / 3));
  CHECK(f.delta_star == doctest::Approx(0.5 - 2.0 / 3).epsilon(1e-9));
  CHECK(f.residual < 1e-10);
  CHECK_FALSE(f.nondecaying);

  const auto flat = fit_decay_exponent(rearrange(std::vector<double>(500, 0.3)), 10, 400);
  CHECK(flat.nondecaying);
  CHECK(std::isnan(flat.p_hat));
  CHECK_THROWS_AS(fit_decay_exponent(rearrange(w), 100, 105), std::invalid_argument);
  CHECK_THROWS_AS(fit_decay_exponent(rearrange(w), 100, 30000), std::invalid_argument);
  CHECK(benchmark_p(1, 2) == doctest::Approx(1.0));
}

TEST_CASE("N-term error curve") {
  BankConfig c;
  c.J = 3;
  c.grid = {0.5, 32};
  WindowBank b(c);
  const GridSpec& g = b.grid();
  GridFunction f = band_limit(sample(g, [](Vec2 x) {
                                return cplx((x[0] + 0.3 * x[1] > 0.05 ? 1.0 : 0.0) *
                                            std::exp(-20 * (x[0] * x[0] + x[1] * x[1])));
                              }),
                              b);
  const CoefficientSet a = analyze(f, b);
  std::vector<std::size_t> Ns{0, 1, 4, 16, 64, 256, 1024, a.size(), a.size() + 10};
  const auto curve = nterm_error_curve(a, b, f, Ns);
  REQUIRE(curve.size() == Ns.size());
  CHECK(curve[0].err_l2 == doctest::Approx(l2_norm(f)).epsilon(1e-12));
  for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i].err_l2 <= curve[i - 1].err_l2 * (1 + 1e-12));
  const double round_trip = l2_norm(synthesize(a, b) - f);
  CHECK(std::abs(curve[Ns.size() - 2].err_l2 - round_trip) <= 1e-12 * l2_norm(f));
  CHECK(curve.back().err_l2 == curve[Ns.size() - 2].err_l2);
  CHECK(curve.back().err_l2 <= 1e-10 * l2_norm(f));

  const auto hs = nterm_error_curve(a, b, f, {0, 16, 256}, NTermNorm::Hs, {Direction::from_angle(0.3)});
  CHECK(hs[0].err_hs == doctest::Approx(hs_norm_via_weights(a, {Direction::from_angle(0.3)})).epsilon(1e-10));
  CHECK(hs[2].err_hs < hs[1].err_hs);

  CHECK_THROWS_AS(nterm_error_curve(a, b, f, {4, 2}), std::invalid_argument);
  const auto path = std::filesystem::temp_directory_path() / "ridgelab_nterm.csv";
  write_nterm_csv(hs, path.string());
  std::ifstream is(path);
  std::string line;
  std::getline(is, line);
  CHECK(line == "N,error_L2,error_Hs");
  std::filesystem::remove(path);
}
