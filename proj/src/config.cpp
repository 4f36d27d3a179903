#include "gasdyn/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gasdyn/errors.hpp"

namespace gasdyn::config {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_plain(const std::string& text, const std::string& where) {
  const char* c = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(c, &end);
  if (end == c || *end != '\0')
    throw config_error(where + ": cannot parse number '" + text + "'");
  return v;
}

}  // namespace

double parse_number(const std::string& text, const std::string& where) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return parse_plain(text, where);
  const double num = parse_plain(trim(text.substr(0, slash)), where);
  const double den = parse_plain(trim(text.substr(slash + 1)), where);
  if (den == 0.0) throw config_error(where + ": fraction with zero denominator");
  return num / den;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str(), path);
}

Config Config::parse_string(const std::string& text, const std::string& name) {
  Config cfg;
  cfg.name_ = name;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw config_error(name + ":" + std::to_string(lineno) + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      cfg.data_[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error(name + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty())
      throw config_error(name + ":" + std::to_string(lineno) + ": empty key");
    cfg.data_[section][key] = trim(line.substr(eq + 1));
  }
  return cfg;
}

bool Config::has(const std::string& section, const std::string& key) const {
  const auto s = data_.find(section);
  return s != data_.end() && s->second.count(key) > 0;
}

std::string Config::str(const std::string& section, const std::string& key) const {
  const auto s = data_.find(section);
  if (s != data_.end()) {
    const auto k = s->second.find(key);
    if (k != s->second.end()) return k->second;
  }
  throw config_error(name_ + ": missing required key '" + key + "' in section [" +
                     section + "]");
}

double Config::number(const std::string& section, const std::string& key) const {
  return parse_number(str(section, key), "[" + section + "] " + key);
}

long Config::integer(const std::string& section, const std::string& key) const {
  const double v = number(section, key);
  const long n = static_cast<long>(v);
  if (static_cast<double>(n) != v)
    throw config_error("[" + section + "] " + key + ": expected an integer");
  return n;
}

double Config::number_or(const std::string& section, const std::string& key,
                         double fallback) const {
  return has(section, key) ? number(section, key) : fallback;
}

long Config::integer_or(const std::string& section, const std::string& key,
                        long fallback) const {
  return has(section, key) ? integer(section, key) : fallback;
}

std::string Config::str_or(const std::string& section, const std::string& key,
                           const std::string& fallback) const {
  return has(section, key) ? str(section, key) : fallback;
}

}  // namespace gasdyn::config
