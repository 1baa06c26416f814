// Copyright (c) 2026 sgep contributors
// Licensed under Apache 2.0

#include "sgep/csvio.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace sgep::csvio {

namespace {

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

Matrix read_csv_data(const std::string& path, bool header, bool center) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for reading");

  std::vector<std::vector<double>> rows;
  std::string line;
  long line_no = 0;
  std::size_t n_cols = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (header && line_no == 1) continue;
    if (line.empty()) continue;
    const auto cells = split_row(line);
    if (n_cols == 0) n_cols = cells.size();
    if (cells.size() != n_cols) {
      std::ostringstream os;
      os << path << ":" << line_no << ": ragged row (" << cells.size() << " cells, expected "
         << n_cols << ")";
      throw Error(ErrorCode::ParseError, os.str());
    }
    std::vector<double> row(n_cols);
    for (std::size_t c = 0; c < n_cols; ++c) {
      const char* begin = cells[c].c_str();
      char* end = nullptr;
      row[c] = std::strtod(begin, &end);
      while (end && *end == ' ') ++end;
      if (end == begin || (end && *end != '\0')) {
        std::ostringstream os;
        os << path << ":" << line_no << ": column " << (c + 1) << ": non-numeric cell '"
           << cells[c] << "'";
        throw Error(ErrorCode::ParseError, os.str());
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorCode::ParseError, path + ": no data rows");

  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(n_cols));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];

  if (center) m.rowwise() -= m.colwise().mean();
  return m;
}

}  // namespace sgep::csvio
