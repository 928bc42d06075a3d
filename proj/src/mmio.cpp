#include "reorder/mmio.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace reorder {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

bool parse_index(const std::string& tok, long long& out) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

bool parse_real(const std::string& tok, double& out) {
  char* end = nullptr;
  out = std::strtod(tok.c_str(), &end);
  return end == tok.c_str() + tok.size() && !tok.empty();
}

MatrixMarketHeader parse_banner(const std::string& line, long line_no) {
  std::vector<std::string> tok = split_ws(line);
  if (tok.size() < 5 || lower(tok[0]) != "%%matrixmarket")
    throw ParseError("missing %%MatrixMarket banner", line_no);
  MatrixMarketHeader h;
  h.object = lower(tok[1]);
  h.format = lower(tok[2]);
  h.field = lower(tok[3]);
  h.symmetry = lower(tok[4]);
  return h;
}

}  // namespace

SparseMatrixCSR parse_matrix_market(std::istream& in) {
  std::string line;
  long line_no = 0;
  auto next_line = [&] {
    if (!std::getline(in, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };

  if (!next_line()) throw ParseError("empty file", 1);
  const MatrixMarketHeader h = parse_banner(line, line_no);

  if (h.object != "matrix")
    throw UnsupportedFormat("unsupported object '" + h.object + "'");
  if (h.format == "array")
    throw UnsupportedFormat("array format is not supported, expected coordinate");
  if (h.format != "coordinate")
    throw UnsupportedFormat("unsupported format '" + h.format + "'");
  if (h.field == "complex")
    throw UnsupportedField("complex matrices are not supported");
  if (h.symmetry == "hermitian")
    throw UnsupportedField("hermitian matrices are not supported");
  if (h.field != "real" && h.field != "integer" && h.field != "pattern")
    throw UnsupportedField("unsupported field '" + h.field + "'");
  if (h.symmetry != "general" && h.symmetry != "symmetric" &&
      h.symmetry != "skew-symmetric")
    throw ParseError("unknown symmetry '" + h.symmetry + "'", line_no);

  const bool pattern = h.field == "pattern";
  const bool mirror = h.symmetry == "symmetric" || h.symmetry == "skew-symmetric";
  const double mirror_sign = h.symmetry == "skew-symmetric" ? -1.0 : 1.0;

  // size line (comments and blank lines may precede it)
  long long rows = 0, cols = 0, declared = 0;
  for (;;) {
    if (!next_line())
      throw ParseError("unexpected end of file before size line", line_no);
    if (!line.empty() && line[0] == '%') continue;
    std::vector<std::string> tok = split_ws(line);
    if (tok.empty()) continue;
    if (tok.size() != 3 || !parse_index(tok[0], rows) || !parse_index(tok[1], cols) ||
        !parse_index(tok[2], declared) || rows < 0 || cols < 0 || declared < 0)
      throw ParseError("malformed size line '" + line + "'", line_no);
    break;
  }

  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(mirror ? declared * 2 : declared));
  long long seen = 0;
  while (seen < declared) {
    if (!next_line())
      throw ParseError("unexpected end of file: expected " + std::to_string(declared) +
                           " entries, found " + std::to_string(seen),
                       line_no);
    if (!line.empty() && line[0] == '%') continue;
    std::vector<std::string> tok = split_ws(line);
    if (tok.empty()) continue;
    long long r = 0, c = 0;
    double v = 1.0;
    const std::size_t expected = pattern ? 2 : 3;
    if (tok.size() != expected || !parse_index(tok[0], r) || !parse_index(tok[1], c) ||
        (!pattern && !parse_real(tok[2], v)))
      throw ParseError("malformed entry '" + line + "'", line_no);
    if (r < 1 || r > rows || c < 1 || c > cols)
      throw ParseError("entry index out of range in '" + line + "'", line_no);
    entries.push_back({static_cast<index_t>(r - 1), static_cast<index_t>(c - 1), v});
    if (mirror && r != c)
      entries.push_back(
          {static_cast<index_t>(c - 1), static_cast<index_t>(r - 1), mirror_sign * v});
    ++seen;
  }

  return SparseMatrixCSR::from_triplets(static_cast<index_t>(rows),
                                        static_cast<index_t>(cols),
                                        std::move(entries));
}

SparseMatrixCSR parse_matrix_market_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return parse_matrix_market(in);
  } catch (ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_matrix_market(const SparseMatrixCSR& m, std::ostream& out) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << m.n_rows << " " << m.n_cols << " " << m.nnz() << "\n";
  char buf[64];
  for (index_t i = 0; i < m.n_rows; ++i) {
    std::span<const index_t> cols = m.row_cols(i);
    std::span<const double> vals = m.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      std::snprintf(buf, sizeof(buf), "%d %d %.17g\n", i + 1, cols[k] + 1, vals[k]);
      out << buf;
    }
  }
}

void write_matrix_market_file(const SparseMatrixCSR& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  write_matrix_market(m, out);
  out.flush();
  if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace reorder
