#include "modlcp/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

namespace modlcp {
namespace {

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool is_blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

struct Banner {
  std::string format;    // coordinate | array
  std::string field;     // real | integer
  std::string symmetry;  // general | symmetric
};

Banner parse_banner(const std::string& line, std::size_t line_no) {
  std::istringstream ss(line);
  std::string tag, object, format, field, symmetry;
  ss >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%MatrixMarket") throw ParseError(line_no, "missing %%MatrixMarket banner");
  object = lowercase(object);
  format = lowercase(format);
  field = lowercase(field);
  symmetry = lowercase(symmetry);
  if (object != "matrix") throw ParseError(line_no, "unsupported object '" + object + "'");
  if (format != "coordinate" && format != "array") throw ParseError(line_no, "unsupported format '" + format + "'");
  if (field != "real" && field != "integer" && field != "double")
    throw ParseError(line_no, "unsupported field '" + field + "'");
  if (symmetry != "general" && symmetry != "symmetric")
    throw ParseError(line_no, "unsupported symmetry '" + symmetry + "'");
  return {format, field, symmetry};
}

double parse_real(const std::string& token, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) throw ParseError(line_no, "bad number '" + token + "'");
    return v;
  } catch (const std::logic_error&) {
    throw ParseError(line_no, "bad number '" + token + "'");
  }
}

long long parse_int(const std::string& token, std::size_t line_no) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw ParseError(line_no, "bad integer '" + token + "'");
  return v;
}

// Reads the next non-comment, non-blank line. Returns false at EOF.
bool next_data_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line[0] == '%') continue;
    if (is_blank(line)) continue;
    return true;
  }
  return false;
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string t; ss >> t;) out.push_back(t);
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  return out;
}

}  // namespace

CsrMatrix<double> read_matrix_market(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError(1, "empty input");
  ++line_no;
  const Banner banner = parse_banner(line, line_no);
  if (banner.format != "coordinate") throw ParseError(line_no, "matrix must be in coordinate format");

  if (!next_data_line(in, line, line_no)) throw ParseError(line_no + 1, "missing size line");
  const auto size = tokens(line);
  if (size.size() != 3) throw ParseError(line_no, "size line must hold rows, cols, nnz");
  const long long rows = parse_int(size[0], line_no);
  const long long cols = parse_int(size[1], line_no);
  const long long nnz = parse_int(size[2], line_no);
  if (rows != cols)
    throw ParseError(line_no, "matrix is not square (" + size[0] + "x" + size[1] + ")");
  if (rows < 1 || nnz < 0) throw ParseError(line_no, "invalid size line");

  const bool symmetric = banner.symmetry == "symmetric";
  std::vector<Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(symmetric ? 2 * nnz : nnz));
  for (long long k = 0; k < nnz; ++k) {
    if (!next_data_line(in, line, line_no))
      throw ParseError(line_no + 1, "expected " + std::to_string(nnz) + " entries, found " + std::to_string(k));
    const auto t = tokens(line);
    if (t.size() != 3) throw ParseError(line_no, "entry must hold row, col, value");
    const long long i = parse_int(t[0], line_no) - 1;
    const long long j = parse_int(t[1], line_no) - 1;
    if (i < 0 || i >= rows || j < 0 || j >= cols) throw ParseError(line_no, "index out of range");
    const double v = parse_real(t[2], line_no);
    triplets.push_back({i, j, v});
    if (symmetric && i != j) triplets.push_back({j, i, v});
  }
  if (next_data_line(in, line, line_no)) throw ParseError(line_no, "trailing data after last entry");
  return CsrMatrix<double>::from_triplets(rows, std::move(triplets));
}

CsrMatrix<double> read_matrix_market(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_matrix_market(in);
}

void write_matrix_market(const CsrMatrix<double>& a, std::ostream& out) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.size() << ' ' << a.size() << ' ' << a.nnz() << '\n';
  out << std::setprecision(17);
  for (Index i = 0; i < a.size(); ++i) {
    const auto cols = a.row_cols(i);
    const auto vals = a.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k) out << i + 1 << ' ' << cols[k] + 1 << ' ' << vals[k] << '\n';
  }
}

void write_matrix_market(const CsrMatrix<double>& a, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_matrix_market(a, out);
}

Vector<double> read_vector(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<double> values;

  if (in.peek() == '%') {
    std::getline(in, line);
    ++line_no;
    const Banner banner = parse_banner(line, line_no);
    if (!next_data_line(in, line, line_no)) throw ParseError(line_no + 1, "missing size line");
    const auto size = tokens(line);
    if (banner.format == "array") {
      if (size.size() != 2) throw ParseError(line_no, "array size line must hold rows, cols");
      const long long rows = parse_int(size[0], line_no);
      if (parse_int(size[1], line_no) != 1) throw ParseError(line_no, "vector must have exactly one column");
      for (long long k = 0; k < rows; ++k) {
        if (!next_data_line(in, line, line_no)) throw ParseError(line_no + 1, "too few vector entries");
        const auto t = tokens(line);
        if (t.size() != 1) throw ParseError(line_no, "expected one value per line");
        values.push_back(parse_real(t[0], line_no));
      }
    } else {
      if (size.size() != 3) throw ParseError(line_no, "size line must hold rows, cols, nnz");
      const long long rows = parse_int(size[0], line_no);
      if (parse_int(size[1], line_no) != 1) throw ParseError(line_no, "vector must have exactly one column");
      const long long nnz = parse_int(size[2], line_no);
      values.assign(static_cast<std::size_t>(rows), 0.0);
      for (long long k = 0; k < nnz; ++k) {
        if (!next_data_line(in, line, line_no)) throw ParseError(line_no + 1, "too few vector entries");
        const auto t = tokens(line);
        if (t.size() != 3) throw ParseError(line_no, "entry must hold row, col, value");
        const long long i = parse_int(t[0], line_no) - 1;
        if (i < 0 || i >= rows || parse_int(t[1], line_no) != 1) throw ParseError(line_no, "index out of range");
        values[static_cast<std::size_t>(i)] += parse_real(t[2], line_no);
      }
    }
    if (next_data_line(in, line, line_no)) throw ParseError(line_no, "trailing data after last entry");
  } else {
    while (std::getline(in, line)) {
      ++line_no;
      if (is_blank(line) || line[0] == '#' || line[0] == '%') continue;
      const auto t = tokens(line);
      if (t.size() != 1) throw ParseError(line_no, "expected one value per line");
      values.push_back(parse_real(t[0], line_no));
    }
  }
  if (values.empty()) throw ParseError(line_no, "vector is empty");
  return Eigen::Map<const Vector<double>>(values.data(), static_cast<Index>(values.size()));
}

Vector<double> read_vector(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_vector(in);
}

void write_vector(const Vector<double>& v, std::ostream& out) {
  out << "%%MatrixMarket matrix array real general\n";
  out << v.size() << " 1\n";
  out << std::setprecision(17);
  for (Index i = 0; i < v.size(); ++i) out << v(i) << '\n';
}

void write_vector(const Vector<double>& v, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_vector(v, out);
}

}  // namespace modlcp
