#pragma once

#include <initializer_list>
#include <string>
#include <vector>

// CSV output contract: header row first, values at 17 significant digits
// (lossless for binary64), every line terminated by a single linefeed.
// Identical tables serialize to identical bytes.

namespace gasdyn::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  Table() = default;
  explicit Table(std::vector<std::string> columns) : header(std::move(columns)) {}

  void add(std::initializer_list<double> row);
  void add(std::vector<double> row);
};

std::string format_value(double v);
std::string format(const Table& t);
void emit(const Table& t, const std::string& path);

// Inverse of format(); used by round-trip checks.
Table parse(const std::string& text);

}  // namespace gasdyn::csv
