// Runs every acceptance criterion once with the default experiment configs and prints one
// PASS/FAIL line each, followed by the measured numbers. Exit status 1 if any criterion fails.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "ridgelab/experiments.hpp"

using namespace ridgelab;
using nlohmann::json;

namespace {

std::string pick(const json& d, const std::vector<const char*>& keys) {
  json out = json::object();
  for (const char* k : keys)
    if (d.contains(k)) out[k] = d[k];
  return out.dump();
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto imn = ExperimentConfig::defaults("imn-verify");
  const auto parseval = ExperimentConfig::defaults("parseval");
  const auto advect = ExperimentConfig::defaults("advect");
  const auto nterm = ExperimentConfig::defaults("nterm");
  const auto angle = ExperimentConfig::defaults("angle-loc");
  std::vector<NTermPoint> curve;

  struct Item {
    std::function<Check()> run;
    std::vector<const char*> keys;
  };
  const std::vector<Item> items{
      {[&] { return check_imn_paths(imn); }, {"worst_quadrature_rel", "worst_series_rel", "seconds"}},
      {[&] { return check_cmn_exactness(imn); }, {"entries_compared", "mismatches", "pattern_violations", "c11_unit"}},
      {[&] { return check_pfd(imn); }, {"worst_residual", "identity_failures", "genfunc_failures"}},
      {[&] { return check_bound_chain(imn); }, {"order_violations", "ratio_min", "ratio_max"}},
      {[&] { return check_special_values(); }, {"exact_mismatches", "worst_rel"}},
      {[&] { return check_frame(parseval); }, {"partition_defect", "parseval_worst", "direct_rel", "duality_rel"}},
      {[&] { return check_advection(advect); },
       {"closed_form_max_err", "manufactured_max_err", "residual_rel", "decay_constant_half_N", "decay_constant_N"}},
      {[&] { return check_hs_bracket(advect); }, {"ratio_min", "ratio_max"}},
      {[&] { return check_nterm_rates(nterm, &curve); },
       {"target", "slope_2^8", "slope_2^10", "slope_2^12", "source_only", "seconds"}},
      {[&] { return check_angle_localization(angle); }, {"within_one", "pooled"}},
      {[&] { return check_tail_decay(angle); }, {"cases"}},
      {[&] { return check_sequence_space(nterm, &curve); },
       {"lp_equals_lorentz_pp_worst", "weak_norms", "curve_monotone"}},
  };

  json all = json::array();
  int failed = 0;
  for (const auto& it : items) {
    const auto t = std::chrono::steady_clock::now();
    Check c;
    try {
      c = it.run();
    } catch (const std::exception& e) {
      c.pass = false;
      c.detail = {{"exception", e.what()}};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
    std::printf("%s criterion %d: %s (%.1f s)\n", c.pass ? "PASS" : "FAIL", c.criterion, c.name.c_str(), secs);
    std::string d = c.detail.contains("exception") ? c.detail.dump() : pick(c.detail, it.keys);
    std::printf("    %s\n", d.c_str());
    std::fflush(stdout);
    failed += !c.pass;
    all.push_back({{"criterion", c.criterion}, {"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  }
  std::ofstream("acceptance_summary.json") << all.dump(2) << "\n";
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%d of %zu criteria pass, %.1f s total\n", int(items.size()) - failed, items.size(), total);
  return failed ? 1 : 0;
}
