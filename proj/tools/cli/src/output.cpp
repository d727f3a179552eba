#include "minkflow/cli/output.hpp"

#include <charconv>
#include <system_error>

#include <unistd.h>

#include "minkflow/cli/config.hpp"

namespace fs = std::filesystem;

namespace minkflow::cli {

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

OutputDir::OutputDir(fs::path target) : target_(std::move(target)) {
  std::error_code ec;
  if (fs::exists(target_, ec)) {
    if (!fs::is_directory(target_, ec))
      throw IoError("output path " + target_.string() + " exists and is not a directory");
    if (!fs::is_empty(target_, ec))
      throw IoError("output directory " + target_.string() + " is not empty");
  }
  fs::path parent = target_.parent_path();
  if (parent.empty()) parent = ".";
  if (!fs::is_directory(parent, ec))
    throw IoError("parent of output directory " + target_.string() + " does not exist");
  staging_ = parent / ("." + target_.filename().string() + ".partial-" + std::to_string(::getpid()));
  fs::remove_all(staging_, ec);
  if (!fs::create_directory(staging_, ec))
    throw IoError("cannot create staging directory " + staging_.string() + ": " + ec.message());
}

OutputDir::~OutputDir() {
  if (committed_) return;
  std::error_code ec;
  fs::remove_all(staging_, ec);
}

void OutputDir::commit() {
  std::error_code ec;
  if (fs::exists(target_, ec)) {
    // Only an empty directory can be here; anything else was rejected up front.
    if (!fs::remove(target_, ec))
      throw IoError("output directory " + target_.string() + " changed while running");
  }
  fs::rename(staging_, target_, ec);
  if (ec) throw IoError("cannot move results into " + target_.string() + ": " + ec.message());
  committed_ = true;
}

CsvWriter::CsvWriter(const fs::path& path, std::string_view header)
    : path_(path), out_(path, std::ios::binary) {
  if (!out_) throw IoError("cannot write " + path.string());
  out_ << header << '\n';
}

void CsvWriter::row(std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) out_ << ',';
    out_ << format_double(v);
    first = false;
  }
  out_ << '\n';
}

void CsvWriter::close() {
  out_.close();
  if (!out_) throw IoError("error while writing " + path_.string());
}

void write_json(const fs::path& path, const nlohmann::json& doc) {
  std::ofstream out(path, std::ios::binary);
  out << doc.dump(2) << '\n';
  out.close();
  if (!out) throw IoError("cannot write " + path.string());
}

}  // namespace minkflow::cli
