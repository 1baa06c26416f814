// Copyright (c) 2026 sgep contributors
// Licensed under Apache 2.0
//
// Matrix Market reader/writer (coordinate and array formats, real/integer
// fields, general and symmetric storage).
#pragma once

#include "sgep/types.hpp"

#include <string>

namespace sgep::mmio {

/// Reads a dense matrix from a Matrix Market file. Symmetric (and
/// skew-symmetric) storage is expanded to the full matrix. Parse failures
/// report the offending line number.
Matrix read_matrix(const std::string& path);

/// Writes a dense matrix. With symmetric = true, only the lower triangle is
/// stored under a `symmetric` banner (the matrix must be square).
void write_matrix(const std::string& path, const Matrix& m, bool symmetric);

}  // namespace sgep::mmio
