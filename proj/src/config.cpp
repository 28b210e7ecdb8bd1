#include "tqdsim/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace tqdsim {

using nlohmann::json;

const std::vector<std::string> kScenarios = {"spectrum",  "population",  "coupling",
                                             "sweetspot", "gate_iswap", "gate_holonomic"};

json default_config(const std::string& scenario) {
  json cfg = {
      {"scenario", scenario},
      {"seed", 1},
      {"output", {{"dir", "out"}}},
  };
  if (scenario == "spectrum" || scenario == "population") {
    cfg["tqd"] = {{"t_p", 2.0e9}, {"t_m", 0.0}, {"eps_d", 0.0}};
    cfg["sweep"] = {{"parameter", "eps_q_over_tp"}, {"min", 0.0}, {"max", 20.0}, {"points", 401}};
  } else if (scenario == "coupling") {
    cfg["circuit"] = {{"z0", 1000.0}, {"chi0", 0.28}, {"w_over_s", 0.5}};
    cfg["tqd"] = {{"t_p", 2.0e9}, {"t_m", 0.0}, {"eps_d", 0.0}, {"eps_q_over_tp", 10.0}};
    cfg["sweep"] = {{"parameter", "omega_r"}, {"min", 1.5e9}, {"max", 6.5e9}, {"points", 101}};
  } else if (scenario == "sweetspot") {
    cfg["tqd"] = {{"t_p", 2.0e9}, {"t_m", 0.0}};
    cfg["sweep"] = {{"parameter", "eps_q_over_tp"}, {"min", 5.0}, {"max", 100.0}, {"points", 39}};
    cfg["sweep2"] = {{"parameter", "eps_d_over_tp"}, {"min", -2.0}, {"max", 2.0}, {"points", 21}};
  } else if (scenario == "gate_iswap") {
    cfg["hybrid"] = {{"omega_r", 1.7e9}, {"g", 66.0e6},      {"n_max", 2},
                     {"coupling_form", "rotating_wave"}};
    cfg["sweep"] = {{"parameter", "delta_over_g"}, {"min", 2.0}, {"max", 10.0}, {"points", 9}};
    cfg["rates"] = {{"gamma_ge", 0.0}, {"gamma_phi", 2.7e6}, {"gamma_a", 0.028e6},
                    {"gamma_phi_mode", 0.0}};
    cfg["integrator"] = {{"tol", 1e-10}, {"samples", 2000}};
    cfg["noise_sampling"] = {{"enabled", false}, {"sigma_omega", 0.0}, {"draws", 0}};
  } else if (scenario == "gate_holonomic") {
    cfg["hybrid"] = {{"omega_tr", 5.0e9}, {"g", 66.0e6},       {"g_ratio", 1.0}, {"n_max", 3},
                     {"ladder", "uniform"}, {"coupling_form", "rotating_wave"}};
    cfg["sweep"] = {{"parameter", "alpha_over_g"}, {"min", 0.0}, {"max", 12.0}, {"points", 13}};
    cfg["rates"] = {{"gamma_ge", 0.0}, {"gamma_phi", 2.7e6}, {"gamma_a", 4.0e3},
                    {"gamma_phi_mode", 0.8e6}};
    cfg["integrator"] = {{"tol", 1e-10}, {"samples", 2000}};
    cfg["noise_sampling"] = {{"enabled", false}, {"sigma_omega", 0.0}, {"draws", 0}};
  } else {
    throw std::invalid_argument("unknown scenario: " + scenario);
  }
  return cfg;
}

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("config parse error in " + path + ": " + e.what());
  }
  if (!j.is_object()) throw std::runtime_error("config file must hold a JSON object: " + path);
  return j;
}

void merge_config(json& base, const json& overlay) {
  if (!overlay.is_object() || !base.is_object()) {
    base = overlay;
    return;
  }
  for (auto it = overlay.begin(); it != overlay.end(); ++it) {
    if (base.contains(it.key()) && base[it.key()].is_object() && it.value().is_object())
      merge_config(base[it.key()], it.value());
    else
      base[it.key()] = it.value();
  }
}

namespace {

std::vector<std::string> split_path(const std::string& dotted) {
  std::vector<std::string> parts;
  std::stringstream ss(dotted);
  std::string p;
  while (std::getline(ss, p, '.')) parts.push_back(p);
  if (parts.empty()) throw std::invalid_argument("empty config key");
  return parts;
}

const json* find_path(const json& cfg, const std::string& dotted) {
  const json* cur = &cfg;
  for (const auto& p : split_path(dotted)) {
    if (!cur->is_object() || !cur->contains(p)) return nullptr;
    cur = &(*cur)[p];
  }
  return cur;
}

}  // namespace

void apply_override(json& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw std::invalid_argument("--set expects key=value, got: " + assignment);
  const std::string key = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(raw);
  } catch (const json::parse_error&) {
    value = raw;  // bare strings like uniform
  }
  json* cur = &cfg;
  const auto parts = split_path(key);
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) cur = &(*cur)[parts[i]];
  (*cur)[parts.back()] = value;
}

namespace {

void reject_unknown_keys(const json& cfg, const json& ref, const std::string& prefix) {
  for (auto it = cfg.begin(); it != cfg.end(); ++it) {
    const std::string path = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (!ref.contains(it.key())) throw std::invalid_argument("unknown config key: " + path);
    if (ref[it.key()].is_object() && it.value().is_object())
      reject_unknown_keys(it.value(), ref[it.key()], path);
  }
}

}  // namespace

json build_config(const std::string& scenario, const std::string& config_path,
                  const std::vector<std::string>& overrides) {
  json cfg = default_config(scenario);
  if (!config_path.empty()) {
    json file = load_config_file(config_path);
    if (file.contains("scenario") && file["scenario"] != scenario)
      throw std::runtime_error("config file scenario '" +
                               file["scenario"].get<std::string>() +
                               "' does not match command '" + scenario + "'");
    merge_config(cfg, file);
  }
  for (const auto& o : overrides) apply_override(cfg, o);
  reject_unknown_keys(cfg, default_config(scenario), "");
  return cfg;
}

std::uint64_t config_hash(const json& cfg) {
  json hashed = cfg;
  hashed.erase("output");
  const std::string s = hashed.dump();
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string config_hash_hex(const json& cfg) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(config_hash(cfg)));
  return buf;
}

namespace {

const json& require_path(const json& cfg, const std::string& dotted) {
  const json* p = find_path(cfg, dotted);
  if (!p) throw std::invalid_argument("config: missing key " + dotted);
  return *p;
}

}  // namespace

double cfg_num(const json& cfg, const std::string& dotted) {
  const json& v = require_path(cfg, dotted);
  if (!v.is_number()) throw std::invalid_argument("config: " + dotted + " must be a number");
  return v.get<double>();
}

int cfg_int(const json& cfg, const std::string& dotted) {
  const json& v = require_path(cfg, dotted);
  if (!v.is_number_integer())
    throw std::invalid_argument("config: " + dotted + " must be an integer");
  return v.get<int>();
}

bool cfg_bool(const json& cfg, const std::string& dotted) {
  const json& v = require_path(cfg, dotted);
  if (!v.is_boolean()) throw std::invalid_argument("config: " + dotted + " must be a boolean");
  return v.get<bool>();
}

std::string cfg_str(const json& cfg, const std::string& dotted) {
  const json& v = require_path(cfg, dotted);
  if (!v.is_string()) throw std::invalid_argument("config: " + dotted + " must be a string");
  return v.get<std::string>();
}

std::vector<double> sweep_grid(const json& cfg, const std::string& section) {
  const double lo = cfg_num(cfg, section + ".min");
  const double hi = cfg_num(cfg, section + ".max");
  const int n = cfg_int(cfg, section + ".points");
  if (n < 1) throw std::invalid_argument("config: " + section + ".points must be >= 1");
  if (n > 1 && !(hi > lo))
    throw std::invalid_argument("config: " + section + " needs max > min");
  std::vector<double> g(static_cast<std::size_t>(n));
  if (n == 1) {
    g[0] = lo;
    return g;
  }
  for (int i = 0; i < n; ++i)
    g[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  g.back() = hi;
  return g;
}

}  // namespace tqdsim
