#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>

#include <json.hpp>

namespace minkflow::cli {

/// Shortest form of "%.17g": the same double always gives the same bytes.
std::string format_double(double v);

/// Files are written into a hidden sibling directory that is renamed onto
/// the target by commit(). The target must not exist or be an empty directory;
/// an uncommitted staging directory is removed on destruction.
class OutputDir {
 public:
  explicit OutputDir(std::filesystem::path target);
  ~OutputDir();
  OutputDir(const OutputDir&) = delete;
  OutputDir& operator=(const OutputDir&) = delete;

  std::filesystem::path file(std::string_view name) const { return staging_ / name; }
  void commit();

 private:
  std::filesystem::path target_;
  std::filesystem::path staging_;
  bool committed_ = false;
};

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::string_view header);
  void row(std::initializer_list<double> values);
  void close();

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

}  // namespace minkflow::cli
