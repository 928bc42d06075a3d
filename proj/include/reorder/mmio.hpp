#pragma once

#include <iosfwd>
#include <string>

#include "reorder/csr.hpp"

namespace reorder {

/// Parsed "%%MatrixMarket" banner tokens, lowercased.
struct MatrixMarketHeader {
  std::string object;    // matrix
  std::string format;    // coordinate | array
  std::string field;     // real | integer | pattern | complex
  std::string symmetry;  // general | symmetric | skew-symmetric | hermitian
};

/// Reads a Matrix Market coordinate file. Symmetric/skew storage is expanded
/// to full, pattern entries become 1.0, duplicates are summed. Complex and
/// hermitian files are rejected (UnsupportedField), array files too
/// (UnsupportedFormat).
SparseMatrixCSR parse_matrix_market(std::istream& in);
SparseMatrixCSR parse_matrix_market_file(const std::string& path);

/// Writes coordinate/real/general with enough digits to round-trip exactly.
void write_matrix_market(const SparseMatrixCSR& m, std::ostream& out);
void write_matrix_market_file(const SparseMatrixCSR& m, const std::string& path);

}  // namespace reorder
