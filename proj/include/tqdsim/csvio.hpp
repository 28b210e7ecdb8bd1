// Deterministic text output: CSV with '#' provenance comments and %.11e
// numbers, and pretty-printed JSON records. No timestamps anywhere, so a rerun
// with the same config reproduces files byte for byte.
#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace tqdsim {

std::string format_number(double v);  // %.11e

class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& path);
  void comment(const std::string& line);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<double>& values);
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t n_columns_ = 0;
};

// standard provenance block: tool version, config hash, scenario
void write_provenance(CsvWriter& w, const nlohmann::json& cfg);

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace tqdsim
