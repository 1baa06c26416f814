// Copyright (c) 2026 sgep contributors
// Licensed under Apache 2.0
#pragma once

#include "sgep/types.hpp"

#include <string>

namespace sgep::csvio {

/// Reads a rectangular numeric CSV into an m x n matrix. `header` skips the
/// first row; `center` subtracts the column means afterwards. Ragged rows
/// and non-numeric cells raise ParseError with row/column locations.
Matrix read_csv_data(const std::string& path, bool header, bool center);

}  // namespace sgep::csvio
