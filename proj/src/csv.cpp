#include "recopt/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <system_error>

#include "recopt/errors.hpp"

namespace recopt {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) throw Error("format_double: conversion failed");
  return std::string(buf, ptr);
}

void write_csv(std::ostream& os, const SweepSeries& series,
               const std::vector<std::string>& metadata) {
  for (const std::string& line : metadata) os << "# " << line << "\n";
  for (std::size_t i = 0; i < series.columns.size(); ++i) {
    if (i) os << ',';
    os << series.columns[i];
  }
  os << "\n";
  for (const std::vector<double>& row : series.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      if (!std::isnan(row[i])) os << format_double(row[i]);
    }
    os << "\n";
  }
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_cell(const std::string& cell) {
  if (cell.empty()) return std::numeric_limits<double>::quiet_NaN();
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (end != cell.c_str() + cell.size()) {
    throw ConfigError("csv: unparseable cell '" + cell + "'");
  }
  return v;
}

}  // namespace

SweepSeries read_csv(std::istream& is) {
  SweepSeries series;
  std::string line;
  bool have_header = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!have_header) {
      series.columns = split_line(line);
      have_header = true;
      continue;
    }
    const std::vector<std::string> cells = split_line(line);
    if (cells.size() != series.columns.size()) {
      throw ConfigError("csv: row with " + std::to_string(cells.size()) +
                        " cells under " + std::to_string(series.columns.size()) +
                        " columns");
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const std::string& cell : cells) row.push_back(parse_cell(cell));
    series.rows.push_back(std::move(row));
  }
  if (!have_header) throw ConfigError("csv: missing header row");
  return series;
}

}  // namespace recopt
