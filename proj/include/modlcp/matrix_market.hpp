#pragma once

#include <filesystem>
#include <iosfwd>

#include "modlcp/sparse.hpp"

namespace modlcp {

// Matrix Market coordinate files (real/integer, general/symmetric). Symmetric
// files are expanded on read. Writers emit 17 significant digits so a
// write/read round trip is exact.

CsrMatrix<double> read_matrix_market(std::istream& in);
CsrMatrix<double> read_matrix_market(const std::filesystem::path& path);
void write_matrix_market(const CsrMatrix<double>& a, std::ostream& out);
void write_matrix_market(const CsrMatrix<double>& a, const std::filesystem::path& path);

/// Reads either a Matrix Market array (n x 1) or plain text with one value
/// per line. Blank lines and lines starting with '%' or '#' are skipped in
/// the plain form.
Vector<double> read_vector(std::istream& in);
Vector<double> read_vector(const std::filesystem::path& path);

/// Writes a Matrix Market array file (n x 1).
void write_vector(const Vector<double>& v, std::ostream& out);
void write_vector(const Vector<double>& v, const std::filesystem::path& path);

}  // namespace modlcp
