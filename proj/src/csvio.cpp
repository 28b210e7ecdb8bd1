#include "tqdsim/csvio.hpp"

#include <cstdio>
#include <stdexcept>

#include "tqdsim/config.hpp"

namespace tqdsim {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path) : path_(path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  out_.open(path);
  if (!out_) throw std::runtime_error("cannot open output file: " + path.string());
}

void CsvWriter::comment(const std::string& line) { out_ << "# " << line << "\n"; }

void CsvWriter::header(const std::vector<std::string>& columns) {
  n_columns_ = columns.size();
  for (std::size_t i = 0; i < columns.size(); ++i)
    out_ << columns[i] << (i + 1 < columns.size() ? "," : "\n");
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != n_columns_)
    throw std::logic_error("CSV row width does not match header: " + path_.string());
  for (std::size_t i = 0; i < values.size(); ++i)
    out_ << format_number(values[i]) << (i + 1 < values.size() ? "," : "\n");
}

void write_provenance(CsvWriter& w, const nlohmann::json& cfg) {
  w.comment(std::string(kToolName) + " " + kToolVersion);
  w.comment("config_hash " + config_hash_hex(cfg));
  w.comment("scenario " + cfg.at("scenario").get<std::string>());
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path.string());
  out << j.dump(2) << "\n";
}

}  // namespace tqdsim
