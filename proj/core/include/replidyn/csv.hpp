#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace replidyn {

// Floats are serialized with 17 significant digits so parsing the CSV back
// recovers the exact double.
std::string format_double17(double value);

using CsvValue = std::variant<std::monostate, long long, std::uint64_t, double, std::string>;

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void row(const std::vector<CsvValue>& values);
  const std::string& str() const { return buffer_; }
  std::size_t rows() const { return rows_; }

 private:
  std::string buffer_;
  std::size_t columns_;
  std::size_t rows_ = 0;
};

// Writes via a temp file plus rename, creating parent directories.
void write_file_atomic(const std::string& path, const std::string& bytes);

std::string read_file(const std::string& path);

// FNV-1a 64-bit content digest, hex encoded.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace replidyn
