#include "replidyn/textconfig.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace replidyn {
namespace {

std::string strip(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

TextConfig TextConfig::parse(const std::string& text, const std::string& origin) {
  TextConfig config;
  config.origin_ = origin;
  std::istringstream stream(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(stream, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = strip(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError(origin + ":" + std::to_string(line_no) + ": unterminated section");
      }
      section = strip(line.substr(1, line.size() - 2));
      if (section.empty()) {
        throw ConfigError(origin + ":" + std::to_string(line_no) + ": empty section name");
      }
      config.sections_[section];  // sections may stay empty
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": expected key = value");
    }
    Entry entry;
    entry.key = strip(line.substr(0, eq));
    entry.line = line_no;
    if (entry.key.empty()) {
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": empty key");
    }
    std::istringstream values(line.substr(eq + 1));
    std::string token;
    while (values >> token) entry.tokens.push_back(token);
    config.sections_[section].push_back(std::move(entry));
  }
  return config;
}

TextConfig TextConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path);
}

bool TextConfig::has_section(const std::string& section) const {
  return sections_.count(section) != 0;
}

bool TextConfig::has(const std::string& section, const std::string& key) const {
  return find(section, key) != nullptr;
}

const TextConfig::Entry* TextConfig::find(const std::string& section,
                                          const std::string& key) const {
  const auto it = sections_.find(section);
  if (it == sections_.end()) return nullptr;
  for (const auto& entry : it->second) {
    if (entry.key == key) return &entry;
  }
  return nullptr;
}

std::vector<const TextConfig::Entry*> TextConfig::all(const std::string& section,
                                                      const std::string& key) const {
  std::vector<const Entry*> out;
  const auto it = sections_.find(section);
  if (it == sections_.end()) return out;
  for (const auto& entry : it->second) {
    if (entry.key == key) out.push_back(&entry);
  }
  return out;
}

void TextConfig::missing(const std::string& section, const std::string& key) const {
  throw ConfigError(origin_ + ": missing [" + section + "] " + key);
}

std::string TextConfig::get_string(const std::string& section, const std::string& key) const {
  const Entry* entry = find(section, key);
  if (!entry || entry->tokens.empty()) missing(section, key);
  return entry->tokens.front();
}

std::string TextConfig::get_string_or(const std::string& section, const std::string& key,
                                      const std::string& fallback) const {
  const Entry* entry = find(section, key);
  if (!entry || entry->tokens.empty()) return fallback;
  return entry->tokens.front();
}

double TextConfig::token_to_double(const std::string& token, const std::string& context) {
  char* end = nullptr;
  const double value = std::strtod(token.c_str(), &end);
  if (end == token.c_str() || *end != '\0') {
    throw ConfigError(context + ": not a number: '" + token + "'");
  }
  return value;
}

long long TextConfig::token_to_int(const std::string& token, const std::string& context) {
  char* end = nullptr;
  const long long value = std::strtoll(token.c_str(), &end, 10);
  if (end == token.c_str() || *end != '\0') {
    throw ConfigError(context + ": not an integer: '" + token + "'");
  }
  return value;
}

double TextConfig::get_double(const std::string& section, const std::string& key) const {
  return token_to_double(get_string(section, key), origin_ + " [" + section + "] " + key);
}

double TextConfig::get_double_or(const std::string& section, const std::string& key,
                                 double fallback) const {
  const Entry* entry = find(section, key);
  if (!entry || entry->tokens.empty()) return fallback;
  return token_to_double(entry->tokens.front(), origin_ + " [" + section + "] " + key);
}

long long TextConfig::get_int(const std::string& section, const std::string& key) const {
  return token_to_int(get_string(section, key), origin_ + " [" + section + "] " + key);
}

long long TextConfig::get_int_or(const std::string& section, const std::string& key,
                                 long long fallback) const {
  const Entry* entry = find(section, key);
  if (!entry || entry->tokens.empty()) return fallback;
  return token_to_int(entry->tokens.front(), origin_ + " [" + section + "] " + key);
}

std::vector<double> TextConfig::get_doubles(const std::string& section,
                                            const std::string& key) const {
  const Entry* entry = find(section, key);
  if (!entry) missing(section, key);
  std::vector<double> out;
  out.reserve(entry->tokens.size());
  for (const auto& token : entry->tokens) {
    out.push_back(token_to_double(token, origin_ + " [" + section + "] " + key));
  }
  return out;
}

std::vector<int> TextConfig::get_ints(const std::string& section, const std::string& key) const {
  const Entry* entry = find(section, key);
  if (!entry) missing(section, key);
  std::vector<int> out;
  out.reserve(entry->tokens.size());
  for (const auto& token : entry->tokens) {
    out.push_back(
        static_cast<int>(token_to_int(token, origin_ + " [" + section + "] " + key)));
  }
  return out;
}

}  // namespace replidyn
