#pragma once

#include <iosfwd>
#include <nlohmann/json_fwd.hpp>
#include <string>

#include "nmfkit/dense_matrix.hpp"

namespace nmfkit {

// Matrix CSV: one row per line, comma-separated decimal values, with an
// optional "# rows cols" comment header. Ragged rows are rejected.
DenseMatrix read_matrix_csv(std::istream& in);
DenseMatrix read_matrix_csv_file(const std::string& path);
void write_matrix_csv(std::ostream& out, const DenseMatrix& M);
void write_matrix_csv_file(const std::string& path, const DenseMatrix& M);

// Matrix JSON: {"rows": p, "cols": n, "data": [row-major flat array]}.
DenseMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const DenseMatrix& M);

/// Shortest decimal string that round-trips the double exactly.
std::string format_double(double v);

}  // namespace nmfkit
