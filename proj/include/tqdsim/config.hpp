// Run configuration. Scenario defaults live in code, a JSON file overlays
// them, and --set key=value overrides win last. All frequencies and rates at
// this boundary are linear Hz (convert with angular() at the point of use).
// The config hash covers everything except the output section, so the same
// physics written to two directories produces identical file bytes.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace tqdsim {

inline constexpr const char* kToolName = "tqdsim";
inline constexpr const char* kToolVersion = "0.1.0";

extern const std::vector<std::string> kScenarios;

nlohmann::json default_config(const std::string& scenario);

// parse a JSON object from a file; throws std::runtime_error with the path in
// the message on I/O or syntax errors
nlohmann::json load_config_file(const std::string& path);

// recursive merge, overlay wins; non-object overlay values replace wholesale
void merge_config(nlohmann::json& base, const nlohmann::json& overlay);

// "integrator.tol=1e-11" style; the value is parsed as a JSON literal when it
// is one, otherwise kept as a string
void apply_override(nlohmann::json& cfg, const std::string& assignment);

// defaults <- file <- overrides, with unknown keys rejected at any depth
nlohmann::json build_config(const std::string& scenario, const std::string& config_path,
                            const std::vector<std::string>& overrides);

std::uint64_t config_hash(const nlohmann::json& cfg);
std::string config_hash_hex(const nlohmann::json& cfg);

// dotted-path accessors; throw std::invalid_argument naming the missing key
double cfg_num(const nlohmann::json& cfg, const std::string& dotted);
int cfg_int(const nlohmann::json& cfg, const std::string& dotted);
bool cfg_bool(const nlohmann::json& cfg, const std::string& dotted);
std::string cfg_str(const nlohmann::json& cfg, const std::string& dotted);

// uniform inclusive grid from sweep-style {min, max, points}; strictly
// increasing unless points == 1
std::vector<double> sweep_grid(const nlohmann::json& cfg, const std::string& section);

}  // namespace tqdsim
