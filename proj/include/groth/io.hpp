#pragma once

#include <string>

#include "groth/matrix.hpp"

namespace groth {

enum class MatrixFormat { json, csv };

/// JSON: {"rows": m, "cols": n, "entries": [[re, im], ...]} row-major.
/// CSV: header line "rows,cols" then one comma-separated line per row, real
/// entries only. Non-finite values are rejected with ErrorCode::parse.
DenseMatrix parse_matrix(const std::string& text, MatrixFormat format);
std::string format_matrix(const DenseMatrix& x, MatrixFormat format);

DenseMatrix read_matrix(const std::string& path, MatrixFormat format);
void write_matrix(const DenseMatrix& x, const std::string& path, MatrixFormat format);

/// Guess from the extension; ".csv" means CSV, anything else JSON.
MatrixFormat format_from_path(const std::string& path);

/// Shortest form that is still exact: printf("%.17g").
std::string format_double(double v);

}  // namespace groth
