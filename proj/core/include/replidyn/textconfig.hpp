#pragma once

#include <map>
#include <string>
#include <vector>

#include "replidyn/errors.hpp"

namespace replidyn {

// Minimal sectioned key/value text format shared by game definitions and
// experiment configs:
//
//   # comment
//   [section]
//   key = token token ...
//
// Values are whitespace-separated tokens; keys may repeat within a section
// (rows of a table keep their order).
class TextConfig {
 public:
  struct Entry {
    std::string key;
    std::vector<std::string> tokens;
    int line = 0;
  };

  static TextConfig parse(const std::string& text, const std::string& origin = "<string>");
  static TextConfig parse_file(const std::string& path);

  bool has_section(const std::string& section) const;
  bool has(const std::string& section, const std::string& key) const;

  // First entry with the key, nullptr when absent.
  const Entry* find(const std::string& section, const std::string& key) const;
  std::vector<const Entry*> all(const std::string& section, const std::string& key) const;

  std::string get_string(const std::string& section, const std::string& key) const;
  std::string get_string_or(const std::string& section, const std::string& key,
                            const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key) const;
  double get_double_or(const std::string& section, const std::string& key, double fallback) const;
  long long get_int(const std::string& section, const std::string& key) const;
  long long get_int_or(const std::string& section, const std::string& key,
                       long long fallback) const;
  std::vector<double> get_doubles(const std::string& section, const std::string& key) const;
  std::vector<int> get_ints(const std::string& section, const std::string& key) const;

  const std::string& origin() const { return origin_; }
  const std::map<std::string, std::vector<Entry>>& sections() const { return sections_; }

  static double token_to_double(const std::string& token, const std::string& context);
  static long long token_to_int(const std::string& token, const std::string& context);

 private:
  std::map<std::string, std::vector<Entry>> sections_;
  std::string origin_;

  [[noreturn]] void missing(const std::string& section, const std::string& key) const;
};

}  // namespace replidyn
