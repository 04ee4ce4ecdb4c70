// Copyright contributors to the coreset project
// SPDX-License-Identifier: Apache-2.0

#include "coreset/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "coreset/errors.hpp"

namespace coreset {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    if (!cell.empty() && cell.back() == '\r') cell.pop_back();
    cells.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t col) {
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end)
    throw data_error("csv: non-numeric cell '" + cell + "' at row " +
                     std::to_string(row) + ", column " + std::to_string(col));
  if (!std::isfinite(value))
    throw data_error("csv: non-finite cell at row " + std::to_string(row) +
                     ", column " + std::to_string(col));
  return value;
}

}  // namespace

Dataset ingest_csv(const std::filesystem::path& path,
                   const std::string& label_column) {
  std::ifstream in(path);
  if (!in)
    throw data_error("csv: cannot open '" + path.string() + "'");

  std::string line;
  if (!std::getline(in, line))
    throw data_error("csv: '" + path.string() + "' is empty");
  const std::vector<std::string> header = split_line(line);
  if (header.empty()) throw data_error("csv: empty header row");

  std::size_t label_idx = header.size();
  if (!label_column.empty()) {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == label_column) label_idx = i;
    if (label_idx == header.size()) {
      std::string cols;
      for (const auto& h : header) cols += (cols.empty() ? "" : ", ") + h;
      throw data_error("csv: label column '" + label_column +
                       "' not found; columns are: " + cols);
    }
    if (header.size() == 1)
      throw data_error("csv: no feature columns besides the label");
  }

  Dataset data;
  data.cols = header.size() - (label_idx < header.size() ? 1 : 0);

  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> cells = split_line(line);
    if (cells.size() != header.size())
      throw data_error("csv: row " + std::to_string(row) + " has " +
                       std::to_string(cells.size()) + " cells, expected " +
                       std::to_string(header.size()));
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const double v = parse_cell(cells[i], row, i + 1);
      if (i == label_idx)
        data.labels.push_back(v);
      else
        data.features.push_back(v);
    }
    ++data.rows;
  }
  if (data.rows == 0)
    throw data_error("csv: empty dataset (header only) in '" + path.string() +
                     "'");
  return data;
}

}  // namespace coreset
