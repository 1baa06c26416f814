// Copyright (c) 2026 sgep contributors
// Licensed under Apache 2.0

#include "sgep/mmio.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace sgep::mmio {

namespace {

[[noreturn]] void parse_fail(const std::string& path, long line, const std::string& what) {
  std::ostringstream os;
  os << path << ":" << line << ": " << what;
  throw Error(ErrorCode::ParseError, os.str());
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

Matrix read_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for reading");

  long line_no = 0;
  std::string line;
  if (!std::getline(in, line)) parse_fail(path, 1, "empty file");
  ++line_no;

  std::istringstream banner(line);
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (lower(tag) != "%%matrixmarket" || lower(object) != "matrix")
    parse_fail(path, line_no, "not a Matrix Market matrix file");
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (format != "coordinate" && format != "array")
    parse_fail(path, line_no, "unsupported format '" + format + "'");
  if (field != "real" && field != "integer")
    parse_fail(path, line_no, "unsupported field '" + field + "'");
  if (symmetry != "general" && symmetry != "symmetric" && symmetry != "skew-symmetric")
    parse_fail(path, line_no, "unsupported symmetry '" + symmetry + "'");

  auto next_data_line = [&](std::istringstream& out) {
    while (std::getline(in, line)) {
      ++line_no;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '%') continue;
      out.clear();
      out.str(line);
      return true;
    }
    return false;
  };

  std::istringstream data;
  if (!next_data_line(data)) parse_fail(path, line_no, "missing size line");

  if (format == "coordinate") {
    long rows = 0, cols = 0, nnz = 0;
    if (!(data >> rows >> cols >> nnz) || rows <= 0 || cols <= 0 || nnz < 0)
      parse_fail(path, line_no, "bad coordinate size line");
    Matrix m = Matrix::Zero(rows, cols);
    for (long e = 0; e < nnz; ++e) {
      if (!next_data_line(data)) parse_fail(path, line_no, "fewer entries than declared");
      long i = 0, j = 0;
      double value = 0;
      if (!(data >> i >> j >> value)) parse_fail(path, line_no, "bad coordinate entry");
      if (i < 1 || i > rows || j < 1 || j > cols)
        parse_fail(path, line_no, "coordinate index out of range");
      m(i - 1, j - 1) = value;
      if (symmetry == "symmetric" && i != j) m(j - 1, i - 1) = value;
      if (symmetry == "skew-symmetric" && i != j) m(j - 1, i - 1) = -value;
    }
    return m;
  }

  long rows = 0, cols = 0;
  if (!(data >> rows >> cols) || rows <= 0 || cols <= 0)
    parse_fail(path, line_no, "bad array size line");
  if (symmetry != "general" && rows != cols)
    parse_fail(path, line_no, "symmetric array storage requires a square matrix");
  Matrix m = Matrix::Zero(rows, cols);
  // Array storage is column-major; symmetric stores the lower triangle only.
  auto read_value = [&]() {
    double value;
    while (!(data >> value)) {
      if (!next_data_line(data)) parse_fail(path, line_no, "fewer values than expected");
    }
    return value;
  };
  for (long j = 0; j < cols; ++j) {
    const long i0 = symmetry == "general" ? 0 : j;
    for (long i = i0; i < rows; ++i) {
      const double value = read_value();
      m(i, j) = value;
      if (symmetry == "symmetric") m(j, i) = value;
      if (symmetry == "skew-symmetric") m(j, i) = i == j ? value : -value;
    }
  }
  return m;
}

void write_matrix(const std::string& path, const Matrix& m, bool symmetric) {
  if (symmetric && m.rows() != m.cols())
    throw Error(ErrorCode::DimensionMismatch, "symmetric storage requires a square matrix");
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  out << "%%MatrixMarket matrix array real " << (symmetric ? "symmetric" : "general") << "\n";
  out << m.rows() << " " << m.cols() << "\n";
  out << std::setprecision(17);
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const Eigen::Index i0 = symmetric ? j : 0;
    for (Eigen::Index i = i0; i < m.rows(); ++i) out << m(i, j) << "\n";
  }
  if (!out) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

}  // namespace sgep::mmio
