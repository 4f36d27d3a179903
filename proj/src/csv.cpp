#include "gasdyn/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gasdyn/errors.hpp"

namespace gasdyn::csv {

void Table::add(std::initializer_list<double> row) {
  add(std::vector<double>(row));
}

void Table::add(std::vector<double> row) {
  if (row.size() != header.size())
    throw config_error("csv: row width does not match the header");
  rows.push_back(std::move(row));
}

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (i) out += ',';
    out += t.header[i];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    if (row.size() != t.header.size())
      throw config_error("csv: table is not rectangular");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_value(row[i]);
    }
    out += '\n';
  }
  return out;
}

void emit(const Table& t, const std::string& path) {
  const std::string body = format(t);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw config_error("csv: cannot write '" + path + "'");
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!out) throw config_error("csv: write failed for '" + path + "'");
}

Table parse(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::string cur;
    std::istringstream ls(line);
    while (std::getline(ls, cur, ',')) fields.push_back(cur);
    if (line.empty() || line.back() == ',') fields.push_back("");
    if (first) {
      t.header = fields;
      first = false;
      continue;
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) {
      char* end = nullptr;
      row.push_back(std::strtod(f.c_str(), &end));
      if (end == f.c_str() || *end != '\0')
        throw config_error("csv: cannot parse value '" + f + "'");
    }
    t.add(std::move(row));
  }
  return t;
}

}  // namespace gasdyn::csv
