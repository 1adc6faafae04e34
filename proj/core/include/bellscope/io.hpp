#pragma once

#include <string>

#include "bellscope/bell.hpp"
#include "bellscope/multipartite.hpp"

namespace bellscope::io {

/// Read a coefficient matrix from JSON {"g": [[...]], "label": optional}
/// or headerless CSV (one row per party-1 setting). The format is sniffed
/// from the first non-space character. Throws ParseError with line/column
/// diagnostics on malformed input.
BellMatrix parse_matrix(const std::string& path);

/// Read an n-party tensor from JSON {"shape": [M1,...,Mn],
/// "coeffs": [...]}, row-major with the first index slowest.
BellTensor parse_tensor(const std::string& path);

/// Serialize with full round-trip precision.
std::string matrix_to_json(const BellMatrix& bm);
std::string tensor_to_json(const BellTensor& t);

void write_file(const std::string& path, const std::string& contents);

}  // namespace bellscope::io
