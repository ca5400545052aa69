#include "replidyn/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "replidyn/errors.hpp"

namespace replidyn {

std::string format_double17(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (k > 0) buffer_ += ',';
    buffer_ += header[k];
  }
  buffer_ += '\n';
}

void CsvWriter::row(const std::vector<CsvValue>& values) {
  if (values.size() != columns_) {
    throw ConfigError("CSV row width " + std::to_string(values.size()) +
                      " does not match header width " + std::to_string(columns_));
  }
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k > 0) buffer_ += ',';
    const CsvValue& v = values[k];
    if (std::holds_alternative<long long>(v)) {
      buffer_ += std::to_string(std::get<long long>(v));
    } else if (std::holds_alternative<std::uint64_t>(v)) {
      buffer_ += std::to_string(std::get<std::uint64_t>(v));
    } else if (std::holds_alternative<double>(v)) {
      buffer_ += format_double17(std::get<double>(v));
    } else if (std::holds_alternative<std::string>(v)) {
      buffer_ += std::get<std::string>(v);
    }
    // monostate renders as an empty cell
  }
  buffer_ += '\n';
  ++rows_;
}

void write_file_atomic(const std::string& path, const std::string& bytes) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw ConfigError("short write to " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace replidyn
