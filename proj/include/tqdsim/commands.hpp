// One function per CLI subcommand. Each takes the merged config, runs the
// physics, writes the output files, and returns the computed numbers so tests
// can assert on content without re-parsing the files.
#pragma once

#include <filesystem>

#include "json.hpp"
#include "tqdsim/linalg.hpp"

namespace tqdsim {

struct SpectrumResult {
  std::vector<double> eps_q_hz;
  Eigen::MatrixXd numeric_hz;   // columns E_g, E_e, E_f
  Eigen::MatrixXd analytic_hz;  // empty unless eps_d = 0 and t12 = t23
  double max_rel_dev = 0.0;     // numeric vs closed form, relative to the span
  std::filesystem::path csv;
};
SpectrumResult cmd_spectrum(const nlohmann::json& cfg);

struct PopulationResult {
  std::vector<double> eps_q_hz;
  std::vector<double> theta;
  Eigen::MatrixXd populations;  // 9 columns: (E,C,L) weight of g, then e, then f
  std::filesystem::path csv;
};
PopulationResult cmd_population(const nlohmann::json& cfg);

struct CouplingResult {
  std::vector<double> omega_r_hz, g0_hz, g_eff_hz;
  double theta = 0.0;
  std::filesystem::path json_path;
};
CouplingResult cmd_coupling(const nlohmann::json& cfg);

struct SweetspotResult {
  // flattened grid, eps_q outer, eps_d inner
  std::vector<double> eps_d_hz, eps_q_hz;
  std::vector<double> slope_d, slope_q;      // finite differences, dimensionless
  std::vector<double> err_d, err_q;          // Richardson error estimates
  std::vector<double> closed_d, closed_q;    // NaN away from eps_d = 0
  std::filesystem::path csv;
};
SweetspotResult cmd_sweetspot(const nlohmann::json& cfg);

struct GatePointResult {
  double param = 0.0;             // delta_over_g or alpha_over_g
  double fidelity = 0.0;          // deterministic run
  double fidelity_refined = 0.0;  // n_max + 1 and tol / 10
  bool converged = false;         // |fidelity - fidelity_refined| < 1e-4
  double fidelity_mean = 0.0;     // over detuning-noise draws; = fidelity when off
  double gate_time_s = 0.0;
  double rate_hz = 0.0;  // chi or Omega over 2 pi
  double max_trace_drift = 0.0;
  double min_eigenvalue = 0.0;
  long n_steps = 0;
};

struct GateSweepResult {
  std::vector<GatePointResult> points;
  std::filesystem::path summary_csv;
  std::filesystem::path record_json;
  std::vector<std::filesystem::path> trajectory_csvs;
};
GateSweepResult cmd_gate_iswap(const nlohmann::json& cfg);
GateSweepResult cmd_gate_holonomic(const nlohmann::json& cfg);

}  // namespace tqdsim
