// CLI front end. One subcommand per scenario; every run takes its defaults
// from code, overlays an optional JSON config, then --set overrides, and
// writes deterministic CSV/JSON into --out.
#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tqdsim/commands.hpp"
#include "tqdsim/config.hpp"

namespace {

struct CliArgs {
  std::string config_path;
  std::string out_dir;
  std::vector<std::string> sets;
  long seed = -1;  // <0 keeps the config value
};

void add_common(CLI::App* sub, CliArgs& args) {
  sub->add_option("--config", args.config_path, "JSON config file overlaying the defaults");
  sub->add_option("--out", args.out_dir, "output directory");
  sub->add_option("--set", args.sets, "override, key=value with dotted keys")
      ->take_all()
      ->allow_extra_args(false);
  sub->add_option("--seed", args.seed, "seed for the optional detuning-noise sampling");
}

int run_scenario(const std::string& scenario, const CliArgs& args) {
  nlohmann::json cfg = tqdsim::build_config(scenario, args.config_path, args.sets);
  if (!args.out_dir.empty()) cfg["output"]["dir"] = args.out_dir;
  if (args.seed >= 0) cfg["seed"] = args.seed;

  if (scenario == "spectrum") {
    const auto r = tqdsim::cmd_spectrum(cfg);
    std::printf("spectrum: %zu points -> %s\n", r.eps_q_hz.size(), r.csv.string().c_str());
    if (r.analytic_hz.size() > 0)
      std::printf("  max closed-form deviation (relative): %.3e\n", r.max_rel_dev);
  } else if (scenario == "population") {
    const auto r = tqdsim::cmd_population(cfg);
    std::printf("population: %zu points -> %s\n", r.eps_q_hz.size(), r.csv.string().c_str());
  } else if (scenario == "coupling") {
    const auto r = tqdsim::cmd_coupling(cfg);
    std::printf("coupling: g0 %.2f..%.2f MHz over %zu frequencies -> %s\n",
                r.g0_hz.front() / 1e6, r.g0_hz.back() / 1e6, r.omega_r_hz.size(),
                r.json_path.string().c_str());
  } else if (scenario == "sweetspot") {
    const auto r = tqdsim::cmd_sweetspot(cfg);
    std::printf("sweetspot: %zu points -> %s\n", r.eps_d_hz.size(), r.csv.string().c_str());
  } else if (scenario == "gate_iswap") {
    const auto r = tqdsim::cmd_gate_iswap(cfg);
    for (const auto& p : r.points)
      std::printf("iswap delta/g=%.3g: F=%.6f (refined %.6f%s), T=%.4g ns\n", p.param,
                  p.fidelity, p.fidelity_refined, p.converged ? "" : ", NOT converged",
                  p.gate_time_s * 1e9);
    std::printf("-> %s\n", r.record_json.string().c_str());
  } else if (scenario == "gate_holonomic") {
    const auto r = tqdsim::cmd_gate_holonomic(cfg);
    for (const auto& p : r.points)
      std::printf("holonomic alpha/g=%.3g: F=%.6f (refined %.6f%s), T=%.4g ns\n", p.param,
                  p.fidelity, p.fidelity_refined, p.converged ? "" : ", NOT converged",
                  p.gate_time_s * 1e9);
    std::printf("-> %s\n", r.record_json.string().c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"triple-dot charge qubit / circuit QED simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tqdsim::kToolName) + " " + tqdsim::kToolVersion);

  const std::pair<const char*, const char*> subs[] = {
      {"spectrum", "qubit energies vs quadrupolar detuning, numeric and closed form"},
      {"population", "eigenstate weights in the even/center/odd basis"},
      {"coupling", "vacuum Rabi coupling estimate vs resonator frequency"},
      {"sweetspot", "transition-energy derivatives vs both detunings"},
      {"gate-iswap", "dispersive two-qubit swap under decoherence"},
      {"gate-holonomic", "resonant holonomic entangler under decoherence"},
  };
  CliArgs args;
  for (const auto& [name, desc] : subs) add_common(app.add_subcommand(name, desc), args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << nlohmann::json{{"error", e.what()}}.dump() << "\n";
    return 1;
  }

  std::string scenario = app.get_subcommands().front()->get_name();
  for (auto& c : scenario)
    if (c == '-') c = '_';

  try {
    return run_scenario(scenario, args);
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{{"error", e.what()}}.dump() << "\n";
    return 1;
  }
}
