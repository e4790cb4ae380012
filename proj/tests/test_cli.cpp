#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "ridgelab/experiments.hpp"

using namespace ridgelab;
using nlohmann::json;

namespace {
std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}
}  // namespace

TEST_CASE("config defaults and parsing") {
  for (const auto& name : experiment_names()) CHECK_NOTHROW(ExperimentConfig::defaults(name).validate());
  CHECK_THROWS_AS(ExperimentConfig::defaults("plot"), ConfigError);

  const auto c = ExperimentConfig::from_json(
      json::parse(R"({"grid": {"N": 128}, "bank": {"J": 5, "profile": "poly:2"}, "seed": 7})"), "parseval");
  CHECK(c.grid.N == 128);
  CHECK(c.grid.L == 0.5);
  CHECK(c.J == 5);
  CHECK(c.order == 2);
  CHECK(c.seed == 7);
  // round trip through JSON
  const auto d = ExperimentConfig::from_json(c.to_json(), "parseval");
  CHECK(d.to_json() == c.to_json());

  CHECK_THROWS_AS(ExperimentConfig::from_json(json::parse(R"({"grid": {"N": 100}})"), "parseval"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_json(json::parse(R"({"source": {"family": "disk"}})"), "nterm"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_json(json::parse(R"({"seed": "x"})"), "nterm"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_json(json::parse(R"({"experiment": "nterm"})"), "advect"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_json(json::parse("[1, 2]"), "advect"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::load("/nonexistent/ridgelab.json", "parseval"), ConfigError);

  const auto tmp = std::filesystem::temp_directory_path() / "ridgelab_bad.json";
  std::ofstream(tmp) << "{ not json";
  CHECK_THROWS_AS(ExperimentConfig::load(tmp.string(), "parseval"), ConfigError);
  std::filesystem::remove(tmp);
}

TEST_CASE("parseval experiment writes reproducible artifacts") {
  auto c = ExperimentConfig::defaults("parseval");
  c.grid = {0.5, 64};
  c.J = 4;
  const auto base = std::filesystem::temp_directory_path() / "ridgelab_cli_test";
  std::filesystem::remove_all(base);
  c.out = (base / "a").string();
  const auto r1 = run_experiment(c);
  CHECK(r1.pass());
  CHECK(r1.exit_code() == 0);
  c.out = (base / "b").string();
  run_experiment(c);
  for (const char* f : {"config.json", "summary.json", "data.csv"}) CHECK(std::filesystem::exists(base / "a" / f));
  CHECK(slurp(base / "a" / "data.csv") == slurp(base / "b" / "data.csv"));
  const json s = json::parse(slurp(base / "a" / "summary.json"));
  CHECK(s["experiment"] == "parseval");
  CHECK(s["checks"][0]["criterion"] == 6);
  const auto back = ExperimentConfig::load((base / "a" / "config.json").string(), "parseval");
  CHECK(back.grid.N == 64);
  std::filesystem::remove_all(base);
}

TEST_CASE("a failing assertion gives exit code 1") {
  ExperimentResult r;
  r.checks.push_back({1, "x", true, {}});
  r.checks.push_back({2, "y", false, {}});
  CHECK(r.exit_code() == 1);
}

TEST_CASE("angle localization report") {
  BankConfig bc;
  bc.J = 5;
  bc.grid = {0.5, 128};
  const WindowBank bank(bc);
  const Direction n = Direction::from_angle(0.7);

  // isotropic input: energy per direction is the same at every scale
  const GridFunction g = band_limit(
      sample(bank.grid(), [](Vec2 x) { return cplx(std::exp(-std::numbers::pi * (x[0] * x[0] + x[1] * x[1]) / 0.004)); }),
      bank);
  const CoefficientSet cg = analyze(g, bank);
  for (int j = 2; j <= 4; ++j) {
    double lo = INFINITY, hi = 0;
    for (int l = 0; l < bank.directions(j); ++l) {
      double e = 0;
      for (const cplx& z : cg.blocks[bank.window_index(j, l)]) e += std::norm(z);
      lo = std::min(lo, e);
      hi = std::max(hi, e);
    }
    // lattices differ between directions, so the spread is not zero
    CHECK(hi / lo < 1.5);
  }
  const AngleReport flat = angle_localization_report(cg, n, 200, 4);
  // top coefficients spread over every distance bin 0..L/4
  CHECK(flat.per_scale.at(4).size() == std::size_t(bank.directions(4) / 4 + 1));
  CHECK(flat.within_one < 0.5);

  // one hyperplane: top coefficients sit at the normal, shell energy grows toward it
  const GridFunction h = fft_inverse(bank.grid(), half_plane_gaussian_spectrum(bank, n, 0.05, 0.25));
  const AngleReport rep = angle_localization_report(analyze(h, bank), n, 200, 3);
  CHECK(rep.within_one >= 0.9);
  long total = 0;
  for (auto [d, k] : rep.pooled) total += k;
  CHECK(total == 200);
  std::vector<Direction> dirs;
  for (int j = 3; j <= 5; ++j) {
    dirs.clear();
    for (int l = 0; l < bank.directions(j); ++l) dirs.push_back(bank.direction(j, l));
    // compare occupied shells only
    double prev = -1;
    for (int r = 1; r <= j; ++r) {
      if (angle_shell(j, r, n, dirs).empty()) continue;
      const double e = rep.shell_energy.at(j).at(r);
      CHECK(e > prev);
      prev = e;
    }
  }
  const json js = rep.to_json();
  CHECK(js["topk"] == 200);
}
