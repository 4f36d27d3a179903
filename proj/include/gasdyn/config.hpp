#pragma once

#include <map>
#include <string>

// Run configuration: INI-style sections of key = value pairs.  '#' starts a
// comment, blank lines are skipped, and numeric values may be written as
// integer fractions like 1/3 (evaluated with a single IEEE division, so a
// config stating z1 = 1/3 hits the same double as eta computed at runtime).

namespace gasdyn::config {

double parse_number(const std::string& text, const std::string& where);

class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text, const std::string& name = "config");

  bool has(const std::string& section, const std::string& key) const;

  // Required lookups throw config_error naming the missing [section] key.
  double number(const std::string& section, const std::string& key) const;
  long integer(const std::string& section, const std::string& key) const;
  std::string str(const std::string& section, const std::string& key) const;

  double number_or(const std::string& section, const std::string& key, double fallback) const;
  long integer_or(const std::string& section, const std::string& key, long fallback) const;
  std::string str_or(const std::string& section, const std::string& key,
                     const std::string& fallback) const;

  const std::map<std::string, std::map<std::string, std::string>>& sections() const {
    return data_;
  }

 private:
  std::string name_;
  std::map<std::string, std::map<std::string, std::string>> data_;
};

}  // namespace gasdyn::config
