#include "tqdsim/commands.hpp"

#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include "tqdsim/circuit.hpp"
#include "tqdsim/config.hpp"
#include "tqdsim/csvio.hpp"
#include "tqdsim/protocols.hpp"
#include "tqdsim/tqd.hpp"
#include "tqdsim/units.hpp"

namespace tqdsim {

using nlohmann::json;

namespace {

std::filesystem::path out_dir(const json& cfg) {
  return std::filesystem::path(cfg_str(cfg, "output.dir"));
}

TqdParams tqd_from_config(const json& cfg, double eps_q) {
  const double t_p = angular(cfg_num(cfg, "tqd.t_p"));
  const double t_m = cfg.at("tqd").contains("t_m") ? angular(cfg_num(cfg, "tqd.t_m")) : 0.0;
  const double r = 1.0 / std::sqrt(2.0);
  TqdParams p;
  p.t12 = r * (t_p + t_m);
  p.t23 = r * (t_p - t_m);
  p.eps_q_bar = eps_q;
  p.eps_d_bar = cfg.at("tqd").contains("eps_d") ? angular(cfg_num(cfg, "tqd.eps_d")) : 0.0;
  return p;
}

// run the sweep body over every grid index on a thread pool; results must be
// written by index only so the schedule cannot leak into the output
template <typename Fn>
void parallel_for_ordered(std::size_t n, Fn&& fn) {
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errs(n);
  auto work = [&] {
    for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
      try {
        fn(i);
      } catch (...) {
        errs[i] = std::current_exception();
      }
    }
  };
  const unsigned hw = std::thread::hardware_concurrency();
  const unsigned nt = static_cast<unsigned>(std::min<std::size_t>(n, hw ? hw : 1u));
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (unsigned t = 1; t < nt; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

}  // namespace

SpectrumResult cmd_spectrum(const json& cfg) {
  const double t_p = angular(cfg_num(cfg, "tqd.t_p"));
  const auto ratios = sweep_grid(cfg, "sweep");
  const TqdParams probe = tqd_from_config(cfg, 0.0);
  const bool closed_form_valid = (probe.eps_d() == 0.0 && probe.t_m() == 0.0);

  SpectrumResult res;
  const Eigen::Index n = static_cast<Eigen::Index>(ratios.size());
  res.numeric_hz.resize(n, 3);
  if (closed_form_valid) res.analytic_hz.resize(n, 3);
  for (Eigen::Index i = 0; i < n; ++i) {
    const TqdParams p = tqd_from_config(cfg, ratios[static_cast<std::size_t>(i)] * t_p);
    res.eps_q_hz.push_back(in_hz(p.eps_q_bar));
    const TqdEigensystem num = eigensystem_numeric(p);
    res.numeric_hz(i, 0) = in_hz(num.e_g);
    res.numeric_hz(i, 1) = in_hz(num.e_e);
    res.numeric_hz(i, 2) = in_hz(num.e_f);
    if (closed_form_valid) {
      const TqdEigensystem ana = eigensystem_analytic(p);
      res.analytic_hz(i, 0) = in_hz(ana.e_g);
      res.analytic_hz(i, 1) = in_hz(ana.e_e);
      res.analytic_hz(i, 2) = in_hz(ana.e_f);
      const double span = std::max(std::abs(ana.e_f), std::abs(ana.e_g));
      for (int c = 0; c < 3; ++c)
        res.max_rel_dev =
            std::max(res.max_rel_dev, std::abs(res.numeric_hz(i, c) - res.analytic_hz(i, c)) /
                                          std::max(in_hz(span), 1e-300));
    }
  }

  CsvWriter w(out_dir(cfg) / "spectrum.csv");
  write_provenance(w, cfg);
  std::vector<std::string> cols = {"eps_q_hz", "e_g_hz", "e_e_hz", "e_f_hz"};
  if (closed_form_valid)
    cols.insert(cols.end(), {"e_g_closed_hz", "e_e_closed_hz", "e_f_closed_hz"});
  w.header(cols);
  for (Eigen::Index i = 0; i < n; ++i) {
    std::vector<double> row = {res.eps_q_hz[static_cast<std::size_t>(i)], res.numeric_hz(i, 0),
                               res.numeric_hz(i, 1), res.numeric_hz(i, 2)};
    if (closed_form_valid)
      row.insert(row.end(), {res.analytic_hz(i, 0), res.analytic_hz(i, 1), res.analytic_hz(i, 2)});
    w.row(row);
  }
  res.csv = w.path();
  return res;
}

PopulationResult cmd_population(const json& cfg) {
  const double t_p = angular(cfg_num(cfg, "tqd.t_p"));
  const auto ratios = sweep_grid(cfg, "sweep");

  PopulationResult res;
  res.populations.resize(static_cast<Eigen::Index>(ratios.size()), 9);
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    const TqdParams p = tqd_from_config(cfg, ratios[i] * t_p);
    res.eps_q_hz.push_back(in_hz(p.eps_q_bar));
    const TqdEigensystem es = eigensystem_numeric(p);
    res.theta.push_back(es.theta);
    const Eigen::Matrix3d pops = eigenstate_populations(es);
    for (int s = 0; s < 3; ++s)
      for (int b = 0; b < 3; ++b)
        res.populations(static_cast<Eigen::Index>(i), 3 * s + b) = pops(s, b);
  }

  CsvWriter w(out_dir(cfg) / "population.csv");
  write_provenance(w, cfg);
  w.header({"eps_q_hz", "theta", "pop_E_g", "pop_C_g", "pop_L_g", "pop_E_e", "pop_C_e",
            "pop_L_e", "pop_E_f", "pop_C_f", "pop_L_f"});
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    std::vector<double> row = {res.eps_q_hz[i], res.theta[i]};
    for (int c = 0; c < 9; ++c) row.push_back(res.populations(static_cast<Eigen::Index>(i), c));
    w.row(row);
  }
  res.csv = w.path();
  return res;
}

CouplingResult cmd_coupling(const json& cfg) {
  const double t_p = angular(cfg_num(cfg, "tqd.t_p"));
  const double eps_q = cfg_num(cfg, "tqd.eps_q_over_tp") * t_p;
  const TqdParams p = tqd_from_config(cfg, eps_q);
  const TqdEigensystem es = eigensystem_numeric(p);

  CouplingResult res;
  res.theta = es.theta;
  for (double f : sweep_grid(cfg, "sweep")) {
    CircuitGeometry geom;
    geom.omega_r = angular(f);
    geom.z0 = cfg_num(cfg, "circuit.z0");
    geom.chi0 = cfg_num(cfg, "circuit.chi0");
    geom.s = 1.0;
    geom.w = cfg_num(cfg, "circuit.w_over_s");
    const double g0 = vacuum_rabi_g0(geom);
    res.omega_r_hz.push_back(f);
    res.g0_hz.push_back(in_hz(g0));
    res.g_eff_hz.push_back(in_hz(effective_coupling(g0, es.theta)));
  }

  json out = {
      {"tool", kToolName},
      {"version", kToolVersion},
      {"config_hash", config_hash_hex(cfg)},
      {"scenario", cfg.at("scenario")},
      {"theta_rad", res.theta},
      {"cos_theta", std::cos(res.theta)},
      {"omega_r_hz", res.omega_r_hz},
      {"g0_hz", res.g0_hz},
      {"g_eff_hz", res.g_eff_hz},
      {"g0_mhz_first", res.g0_hz.front() / 1e6},
      {"g0_mhz_last", res.g0_hz.back() / 1e6},
  };
  res.json_path = out_dir(cfg) / "coupling.json";
  write_json_file(res.json_path, out);
  return res;
}

SweetspotResult cmd_sweetspot(const json& cfg) {
  const double t_p = angular(cfg_num(cfg, "tqd.t_p"));
  const auto q_ratios = sweep_grid(cfg, "sweep");
  const auto d_ratios = sweep_grid(cfg, "sweep2");

  SweetspotResult res;
  for (double rq : q_ratios)
    for (double rd : d_ratios) {
      TqdParams p = tqd_from_config(cfg, rq * t_p);
      p.eps_d_bar = rd * t_p;
      const SweetSpotDerivatives sd = sweet_spot_derivatives(p);
      res.eps_d_hz.push_back(in_hz(p.eps_d_bar));
      res.eps_q_hz.push_back(in_hz(p.eps_q_bar));
      res.slope_d.push_back(sd.slope_d);
      res.slope_q.push_back(sd.slope_q);
      res.err_d.push_back(sd.err_d);
      res.err_q.push_back(sd.err_q);
      if (rd == 0.0) {
        const ExcitationExpansion ex = excitation_energy_expansion(p);
        res.closed_d.push_back(ex.slope_d);
        res.closed_q.push_back(ex.slope_q);
      } else {
        res.closed_d.push_back(std::nan(""));
        res.closed_q.push_back(std::nan(""));
      }
    }

  CsvWriter w(out_dir(cfg) / "sweetspot.csv");
  write_provenance(w, cfg);
  w.comment("row order: eps_q outer, eps_d inner; slopes are d(omega_ge)/d(eps), "
            "dimensionless; closed-form columns apply at eps_d = 0 only");
  w.header({"eps_d_hz", "eps_q_hz", "slope_d", "slope_q", "err_d", "err_q", "closed_slope_d",
            "closed_slope_q"});
  for (std::size_t i = 0; i < res.eps_d_hz.size(); ++i)
    w.row({res.eps_d_hz[i], res.eps_q_hz[i], res.slope_d[i], res.slope_q[i], res.err_d[i],
           res.err_q[i], res.closed_d[i], res.closed_q[i]});
  res.csv = w.path();
  return res;
}

namespace {

DecoherenceRates rates_from_config(const json& cfg) {
  DecoherenceRates r;
  r.gamma_ge[0] = r.gamma_ge[1] = angular(cfg_num(cfg, "rates.gamma_ge"));
  r.gamma_phi[0] = r.gamma_phi[1] = angular(cfg_num(cfg, "rates.gamma_phi"));
  r.gamma_a = angular(cfg_num(cfg, "rates.gamma_a"));
  r.gamma_phi_mode = angular(cfg_num(cfg, "rates.gamma_phi_mode"));
  return r;
}

CouplingForm form_from_config(const json& cfg) {
  const std::string s = cfg_str(cfg, "hybrid.coupling_form");
  if (s == "rotating_wave") return CouplingForm::rotating_wave;
  if (s == "full") return CouplingForm::full;
  throw std::invalid_argument("config: hybrid.coupling_form must be rotating_wave or full");
}

Ladder ladder_from_config(const json& cfg) {
  const std::string s = cfg_str(cfg, "hybrid.ladder");
  if (s == "uniform") return Ladder::uniform;
  if (s == "bosonic") return Ladder::bosonic;
  throw std::invalid_argument("config: hybrid.ladder must be uniform or bosonic");
}

struct TrajData {
  std::vector<double> times;
  Eigen::MatrixXd pops;
  std::vector<double> fid;
  std::vector<std::string> labels;
};

struct PointOutcome {
  GatePointResult summary;
  TrajData traj;
};

// mean fidelity over quasi-static detuning draws: each draw shifts both qubit
// splittings independently, evolves for the nominal duration, and scores
// against the nominal target
double noise_sampled_mean(const json& cfg, const HybridSystem& nominal, GateKind kind,
                          const DecoherenceRates& rates, const ProtocolOptions& opts,
                          double t_gate, std::size_t point_index) {
  const int draws = cfg_int(cfg, "noise_sampling.draws");
  const double sigma = angular(cfg_num(cfg, "noise_sampling.sigma_omega"));
  const long seed = cfg_int(cfg, "seed");
  if (draws <= 0) throw std::invalid_argument("noise_sampling.draws must be positive when enabled");

  const bool iswap = (kind == GateKind::iswap_dispersive);
  const MatrixC rho0 = iswap ? basis_state_density(nominal, 0, 1, 0)
                             : basis_state_density(nominal, 0, 1, 1);
  const MatrixC target = iswap ? basis_state_density(nominal, 1, 0, 0)
                               : basis_state_density(nominal, 1, 0, 1);
  const std::vector<double> grid = {0.0, t_gate};
  IntegratorOptions io;
  io.tol = opts.tol;

  double acc = 0.0;
  for (int d = 0; d < draws; ++d) {
    std::seed_seq sq{static_cast<unsigned long long>(seed),
                     static_cast<unsigned long long>(point_index),
                     static_cast<unsigned long long>(d)};
    std::mt19937_64 rng(sq);
    std::normal_distribution<double> dist(0.0, sigma);
    HybridSystem sys = nominal;
    sys.omega[0] += dist(rng);
    sys.omega[1] += dist(rng);
    MatrixC h;
    if (opts.form == CouplingForm::rotating_wave)
      h = uniform_frame_hamiltonian(sys, iswap ? Ladder::bosonic : opts.ladder);
    else
      h = iswap ? tavis_cummings_hamiltonian(sys) : transmon_hamiltonian(sys, opts.ladder);
    const Trajectory traj = integrate(rho0, h, build_channels(rates, sys), grid, io, &target);
    acc += traj.fidelity.back();
  }
  return acc / draws;
}

GateSweepResult write_gate_sweep(const json& cfg, const std::string& prefix,
                                 const std::string& param_name,
                                 const std::vector<PointOutcome>& outcomes,
                                 const json& extra_record) {
  GateSweepResult res;
  const auto dir = out_dir(cfg);

  CsvWriter sum(dir / (prefix + "_summary.csv"));
  write_provenance(sum, cfg);
  sum.header({param_name, "fidelity", "fidelity_refined", "converged", "fidelity_mean",
              "gate_time_s", "rate_hz", "max_trace_drift", "min_eigenvalue", "n_steps"});
  json record_points = json::array();
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const GatePointResult& p = outcomes[i].summary;
    sum.row({p.param, p.fidelity, p.fidelity_refined, p.converged ? 1.0 : 0.0, p.fidelity_mean,
             p.gate_time_s, p.rate_hz, p.max_trace_drift, p.min_eigenvalue,
             static_cast<double>(p.n_steps)});
    res.points.push_back(p);

    char name[64];
    std::snprintf(name, sizeof name, "%s_point_%02zu.csv", prefix.c_str(), i);
    CsvWriter tw(dir / name);
    write_provenance(tw, cfg);
    tw.comment(param_name + " " + format_number(p.param));
    std::vector<std::string> cols = {"t_s"};
    for (const auto& l : outcomes[i].traj.labels) cols.push_back("pop_" + l);
    cols.push_back("fidelity");
    tw.header(cols);
    for (std::size_t s = 0; s < outcomes[i].traj.times.size(); ++s) {
      std::vector<double> row = {outcomes[i].traj.times[s]};
      for (Eigen::Index c = 0; c < outcomes[i].traj.pops.cols(); ++c)
        row.push_back(outcomes[i].traj.pops(static_cast<Eigen::Index>(s), c));
      row.push_back(outcomes[i].traj.fid[s]);
      tw.row(row);
    }
    res.trajectory_csvs.push_back(tw.path());

    record_points.push_back({{param_name, p.param},
                             {"fidelity", p.fidelity},
                             {"fidelity_refined", p.fidelity_refined},
                             {"converged", p.converged},
                             {"fidelity_mean", p.fidelity_mean},
                             {"gate_time_s", p.gate_time_s},
                             {"rate_hz", p.rate_hz},
                             {"max_trace_drift", p.max_trace_drift},
                             {"min_eigenvalue", p.min_eigenvalue},
                             {"n_steps", p.n_steps}});
  }
  res.summary_csv = sum.path();

  // the embedded config drops the output section, like the hash does, so a
  // rerun into another directory reproduces the record byte for byte
  json cfg_doc = cfg;
  cfg_doc.erase("output");
  json record = {{"tool", kToolName},
                 {"version", kToolVersion},
                 {"config_hash", config_hash_hex(cfg)},
                 {"config", cfg_doc},
                 {"results", record_points}};
  merge_config(record, extra_record);
  res.record_json = dir / (prefix + "_result.json");
  write_json_file(res.record_json, record);
  return res;
}

}  // namespace

GateSweepResult cmd_gate_iswap(const json& cfg) {
  const double g = angular(cfg_num(cfg, "hybrid.g"));
  const double omega_r = angular(cfg_num(cfg, "hybrid.omega_r"));
  const int n_max = cfg_int(cfg, "hybrid.n_max");
  const DecoherenceRates rates = rates_from_config(cfg);
  ProtocolOptions opts;
  opts.tol = cfg_num(cfg, "integrator.tol");
  opts.samples = cfg_int(cfg, "integrator.samples");
  opts.form = form_from_config(cfg);
  const bool sample_noise = cfg_bool(cfg, "noise_sampling.enabled");
  const auto ratios = sweep_grid(cfg, "sweep");

  std::vector<PointOutcome> outcomes(ratios.size());
  std::atomic<bool> dispersive_warning{false};
  parallel_for_ordered(ratios.size(), [&](std::size_t i) {
    HybridSystem sys;
    sys.omega_r = omega_r;
    sys.g[0] = sys.g[1] = g;
    sys.omega[0] = sys.omega[1] = omega_r + ratios[i] * g;
    sys.n_max = n_max;
    const DispersiveModel m = schrieffer_wolff_reduce(sys);
    if (m.dispersive_warning) dispersive_warning = true;

    const ProtocolResult run = run_iswap_protocol(sys, rates, basis_state_density(sys, 0, 1, 0), opts);

    HybridSystem refined = sys;
    refined.n_max = n_max + 1;
    ProtocolOptions ro = opts;
    ro.tol = opts.tol / 10.0;
    ro.samples = 2;
    const ProtocolResult check =
        run_iswap_protocol(refined, rates, basis_state_density(refined, 0, 1, 0), ro);

    GatePointResult& p = outcomes[i].summary;
    p.param = ratios[i];
    p.fidelity = run.fidelity;
    p.fidelity_refined = check.fidelity;
    p.converged = std::abs(run.fidelity - check.fidelity) < 1e-4;
    p.gate_time_s = run.spec.duration;
    p.rate_hz = in_hz(m.chi);
    p.max_trace_drift = run.traj.max_trace_drift;
    p.min_eigenvalue = run.traj.min_eigenvalue;
    p.n_steps = run.traj.n_steps;
    p.fidelity_mean =
        sample_noise ? noise_sampled_mean(cfg, sys, GateKind::iswap_dispersive, rates, opts,
                                          run.spec.duration, i)
                     : run.fidelity;

    outcomes[i].traj.times = run.traj.times;
    outcomes[i].traj.pops = run.traj.populations;
    outcomes[i].traj.fid = run.traj.fidelity;
    outcomes[i].traj.labels = run.labels;
  });

  return write_gate_sweep(cfg, "iswap", "delta_over_g", outcomes,
                          json{{"gate", "iswap_dispersive"},
                               {"dispersive_warning", dispersive_warning.load()}});
}

GateSweepResult cmd_gate_holonomic(const json& cfg) {
  const double g = angular(cfg_num(cfg, "hybrid.g"));
  const double g_ratio = cfg_num(cfg, "hybrid.g_ratio");
  const double omega_tr = angular(cfg_num(cfg, "hybrid.omega_tr"));
  const int n_max = cfg_int(cfg, "hybrid.n_max");
  const DecoherenceRates rates = rates_from_config(cfg);
  ProtocolOptions opts;
  opts.tol = cfg_num(cfg, "integrator.tol");
  opts.samples = cfg_int(cfg, "integrator.samples");
  opts.form = form_from_config(cfg);
  opts.ladder = ladder_from_config(cfg);
  const bool sample_noise = cfg_bool(cfg, "noise_sampling.enabled");
  const auto ratios = sweep_grid(cfg, "sweep");

  const double phi_mix = mixing_angle(g, g * g_ratio);
  std::vector<PointOutcome> outcomes(ratios.size());
  parallel_for_ordered(ratios.size(), [&](std::size_t i) {
    HybridSystem sys;
    sys.omega_r = omega_tr;
    sys.omega[0] = sys.omega[1] = omega_tr;
    sys.g[0] = g;
    sys.g[1] = g * g_ratio;
    sys.n_max = n_max;
    sys.alpha = ratios[i] * g;

    const ProtocolResult run =
        run_holonomic_protocol(sys, rates, basis_state_density(sys, 0, 1, 1), opts);

    HybridSystem refined = sys;
    refined.n_max = n_max + 1;
    ProtocolOptions ro = opts;
    ro.tol = opts.tol / 10.0;
    ro.samples = 2;
    const ProtocolResult check =
        run_holonomic_protocol(refined, rates, basis_state_density(refined, 0, 1, 1), ro);

    GatePointResult& p = outcomes[i].summary;
    p.param = ratios[i];
    p.fidelity = run.fidelity;
    p.fidelity_refined = check.fidelity;
    p.converged = std::abs(run.fidelity - check.fidelity) < 1e-4;
    p.gate_time_s = run.spec.duration;
    p.rate_hz = in_hz(kPi / run.spec.duration);
    p.max_trace_drift = run.traj.max_trace_drift;
    p.min_eigenvalue = run.traj.min_eigenvalue;
    p.n_steps = run.traj.n_steps;
    p.fidelity_mean =
        sample_noise ? noise_sampled_mean(cfg, sys, GateKind::holonomic_resonant, rates, opts,
                                          run.spec.duration, i)
                     : run.fidelity;

    outcomes[i].traj.times = run.traj.times;
    outcomes[i].traj.pops = run.traj.populations;
    outcomes[i].traj.fid = run.traj.fidelity;
    outcomes[i].traj.labels = run.labels;
  });

  return write_gate_sweep(cfg, "holo", "alpha_over_g", outcomes,
                          json{{"gate", "holonomic_resonant"}, {"phi_mix_rad", phi_mix}});
}

}  // namespace tqdsim
