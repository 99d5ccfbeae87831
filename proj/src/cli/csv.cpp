#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "lzmetro/cli.hpp"

namespace lzm::cli {

namespace {

std::string format_cell(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t i = 0; i < table.header.size(); ++i)
    out << (i ? "," : "") << table.header[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_cell(row[i]);
    out << '\n';
  }
}

Table read_csv(std::istream& in) {
  Table table;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("csv: missing header");
  table.header = split(line);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    const auto cells = split(line);
    if (cells.size() != table.header.size())
      throw std::runtime_error("csv: line " + std::to_string(lineno) + " has " +
                               std::to_string(cells.size()) + " cells, expected " +
                               std::to_string(table.header.size()));
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) {
      char* end = nullptr;
      const double x = std::strtod(c.c_str(), &end);
      if (c.empty() || *end != '\0')
        throw std::runtime_error("csv: line " + std::to_string(lineno) + ": bad number '" + c + "'");
      row.push_back(x);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace lzm::cli
