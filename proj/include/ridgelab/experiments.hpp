#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ridgelab/advection.hpp"
#include "ridgelab/seqspace.hpp"
#include "ridgelab/xform.hpp"

namespace ridgelab {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Every field has a default matching the acceptance setup of its experiment; a JSON config
// only needs the keys it changes.
struct ExperimentConfig {
  std::string experiment;
  GridSpec grid{0.5, 512};
  int J = 7;
  Vec2 sigma{0.5, 0.125};
  int order = 4;

  struct Source {
    // "box-gaussian", "half-plane-gaussian", "gaussian"
    std::string family = "box-gaussian";
    double angle = 0.3;        // box rotation, or polar angle of the hyperplane normal
    Vec2 half_width{0.2, 0.12};
    double width = 0.25;       // Gaussian e^{-pi |x|^2 / width^2}
    double offset = 0.05;      // hyperplane offset v
    // "solution": analyze u = S[f]; "source": analyze f itself
    std::string target = "solution";
  } source;

  double s_angle = 0.3;
  struct Absorption {
    std::string family = "constant";  // "constant" or "sine"
    double kappa = 8;
    double gamma = 8;
  } absorption;

  double t = 2;        // smoothness used for the benchmark p*
  double delta = 0.5;  // tail-set parameter, recorded only
  std::string out = "ridgelab_out";
  std::uint64_t seed = 2024;

  int m_max = 6, n_max = 6, samples = 200;
  double tol = 1e-6;
  int topk = 1000;
  int jmin = 3;

  static ExperimentConfig defaults(const std::string& experiment);
  // keys absent from j keep the defaults of the named experiment
  static ExperimentConfig from_json(const nlohmann::json& j, const std::string& experiment);
  static ExperimentConfig load(const std::string& path, const std::string& experiment);
  nlohmann::json to_json() const;
  void validate() const;
};

const std::vector<std::string>& experiment_names();

struct Check {
  int criterion = 0;
  std::string name;
  bool pass = false;
  nlohmann::json detail;
};

// acceptance criteria, one function each
Check check_imn_paths(const ExperimentConfig& cfg);
Check check_cmn_exactness(const ExperimentConfig& cfg);
Check check_pfd(const ExperimentConfig& cfg);
Check check_bound_chain(const ExperimentConfig& cfg);
Check check_special_values();
Check check_frame(const ExperimentConfig& cfg);
Check check_advection(const ExperimentConfig& cfg);
Check check_hs_bracket(const ExperimentConfig& cfg);
// curve receives the (N, L2, Hs) rows written to data.csv
Check check_nterm_rates(const ExperimentConfig& cfg, std::vector<NTermPoint>* curve = nullptr);
Check check_angle_localization(const ExperimentConfig& cfg);
Check check_tail_decay(const ExperimentConfig& cfg);
Check check_sequence_space(const ExperimentConfig& cfg, const std::vector<NTermPoint>* curve = nullptr);

struct AngleReport {
  int topk = 0;
  int jmin = 0;
  // pooled over j >= jmin: l-distance -> count
  std::map<int, long> pooled;
  // per scale, top-K of that scale alone
  std::map<int, std::map<int, long>> per_scale;
  double within_one = 0;  // fraction of the pooled top-K at distance <= 1
  // energy[j][r] for shells 1 <= r <= j
  std::map<int, std::map<int, double>> shell_energy;
  nlohmann::json to_json() const;
};

// distance is cyclic in l to whichever direction is nearest to n or -n
AngleReport angle_localization_report(const CoefficientSet& c, const Direction& n, int topk, int jmin = 3);

// band-limited spectra (centred, on the bank grid) of the canonical sources
std::vector<cplx> box_gaussian_spectrum(const WindowBank& bank, double angle, const Vec2& half_width,
                                        double width);
std::vector<cplx> half_plane_gaussian_spectrum(const WindowBank& bank, const Direction& n, double v,
                                               double width);

struct ExperimentResult {
  std::string experiment;
  std::vector<Check> checks;
  nlohmann::json summary;
  bool pass() const;
  // 0 pass, 1 assertion failure
  int exit_code() const { return pass() ? 0 : 1; }
};

// runs the experiment, writes config.json, summary.json and data.csv into cfg.out
ExperimentResult run_experiment(const ExperimentConfig& cfg);

}  // namespace ridgelab
