#include "tlscond/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

namespace tlscond::io {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string> split(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string tok; ss >> tok;) out.push_back(tok);
  return out;
}

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

double parse_real(const std::string& tok, const std::string& source, long line) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(source, line, "expected a real number, got '" + tok + "'");
  }
  if (!std::isfinite(v)) throw ParseError(source, line, "non-finite value '" + tok + "'");
  return v;
}

long parse_index(const std::string& tok, const std::string& source, long line) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(source, line, "expected an integer, got '" + tok + "'");
  }
  return v;
}

// Reads the next line that is neither a comment nor blank.
bool next_data_line(std::istream& in, std::string& line, long& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (blank(line) || line[0] == '%') continue;
    return true;
  }
  return false;
}

struct Header {
  MarketLayout layout = MarketLayout::array;
};

Header parse_header(const std::string& line, const std::string& source) {
  const auto tok = split(line);
  if (tok.size() != 5 || lower(tok[0]) != "%%matrixmarket" || lower(tok[1]) != "matrix") {
    throw ParseError(source, 1, "missing '%%MatrixMarket matrix <layout> <field> <symmetry>' banner");
  }
  Header h;
  const std::string layout = lower(tok[2]);
  if (layout == "array") {
    h.layout = MarketLayout::array;
  } else if (layout == "coordinate") {
    h.layout = MarketLayout::coordinate;
  } else {
    throw ParseError(source, 1, "unknown layout '" + tok[2] + "'");
  }
  const std::string field = lower(tok[3]);
  if (field != "real" && field != "double" && field != "integer") {
    throw ParseError(source, 1, "field '" + tok[3] + "' is not real");
  }
  if (lower(tok[4]) != "general") {
    throw ParseError(source, 1, "only 'general' symmetry is supported, got '" + tok[4] + "'");
  }
  return h;
}

Matrix read_body(std::istream& in, const Header& h, const std::string& source, long lineno) {
  std::string line;
  if (!next_data_line(in, line, lineno)) throw ParseError(source, lineno, "missing size line");
  const auto size = split(line);
  const std::size_t expect = h.layout == MarketLayout::array ? 2 : 3;
  if (size.size() != expect) throw ParseError(source, lineno, "malformed size line");
  const long rows = parse_index(size[0], source, lineno);
  const long cols = parse_index(size[1], source, lineno);
  if (rows < 0 || cols < 0) throw ParseError(source, lineno, "negative dimension");
  Matrix M = Matrix::Zero(rows, cols);

  if (h.layout == MarketLayout::array) {
    const long total = rows * cols;
    for (long k = 0; k < total; ++k) {
      if (!next_data_line(in, line, lineno)) {
        throw ParseError(source, lineno, "expected " + std::to_string(total) + " values, got " +
                                             std::to_string(k));
      }
      const auto tok = split(line);
      if (tok.size() != 1) throw ParseError(source, lineno, "expected one value per line");
      M(k % rows, k / rows) = parse_real(tok[0], source, lineno);
    }
  } else {
    const long nnz = parse_index(size[2], source, lineno);
    if (nnz < 0) throw ParseError(source, lineno, "negative entry count");
    for (long k = 0; k < nnz; ++k) {
      if (!next_data_line(in, line, lineno)) {
        throw ParseError(source, lineno, "expected " + std::to_string(nnz) + " entries, got " +
                                             std::to_string(k));
      }
      const auto tok = split(line);
      if (tok.size() != 3) throw ParseError(source, lineno, "expected 'row col value'");
      const long i = parse_index(tok[0], source, lineno);
      const long j = parse_index(tok[1], source, lineno);
      if (i < 1 || i > rows || j < 1 || j > cols) {
        throw ParseError(source, lineno, "entry (" + tok[0] + ", " + tok[1] + ") out of range");
      }
      M(i - 1, j - 1) += parse_real(tok[2], source, lineno);
    }
  }
  if (next_data_line(in, line, lineno)) throw ParseError(source, lineno, "trailing data");
  return M;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace

Matrix read_matrix_market(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(source, 1, "empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const Header h = parse_header(line, source);
  return read_body(in, h, source, 1);
}

Matrix read_matrix_market(const std::string& path) {
  auto in = open_in(path);
  return read_matrix_market(in, path);
}

void write_matrix_market(std::ostream& out, const Matrix& M, MarketLayout layout) {
  out << std::setprecision(17);
  if (layout == MarketLayout::array) {
    out << "%%MatrixMarket matrix array real general\n" << M.rows() << ' ' << M.cols() << '\n';
    for (Index j = 0; j < M.cols(); ++j) {
      for (Index i = 0; i < M.rows(); ++i) out << M(i, j) << '\n';
    }
  } else {
    const Index nnz = (M.array() != 0.0).count();
    out << "%%MatrixMarket matrix coordinate real general\n"
        << M.rows() << ' ' << M.cols() << ' ' << nnz << '\n';
    for (Index j = 0; j < M.cols(); ++j) {
      for (Index i = 0; i < M.rows(); ++i) {
        if (M(i, j) != 0.0) out << i + 1 << ' ' << j + 1 << ' ' << M(i, j) << '\n';
      }
    }
  }
}

void write_matrix_market(const std::string& path, const Matrix& M, MarketLayout layout) {
  auto out = open_out(path);
  write_matrix_market(out, M, layout);
}

Vector read_vector(std::istream& in, const std::string& source) {
  std::string first;
  long lineno = 0;
  // Peek at the first line to choose the format.
  if (!std::getline(in, first)) return Vector();
  ++lineno;
  if (!first.empty() && first.back() == '\r') first.pop_back();
  if (first.rfind("%%", 0) == 0) {
    const Header h = parse_header(first, source);
    const Matrix M = read_body(in, h, source, 1);
    if (M.cols() != 1) {
      throw ParseError(source, 1, "vector file must have one column, got " +
                                      std::to_string(M.cols()));
    }
    return M.col(0);
  }
  std::vector<double> values;
  auto consume = [&](const std::string& raw) {
    std::string line = raw.substr(0, raw.find('#'));
    const auto tok = split(line);
    if (tok.empty()) return;
    if (tok.size() != 1) throw ParseError(source, lineno, "expected one value per line");
    values.push_back(parse_real(tok[0], source, lineno));
  };
  consume(first);
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    consume(line);
  }
  return Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size()));
}

Vector read_vector(const std::string& path) {
  auto in = open_in(path);
  return read_vector(in, path);
}

void write_vector(std::ostream& out, const Vector& v) {
  out << std::setprecision(17);
  for (Index i = 0; i < v.size(); ++i) out << v(i) << '\n';
}

void write_vector(const std::string& path, const Vector& v) {
  auto out = open_out(path);
  write_vector(out, v);
}

TlsProblem load_problem(const std::string& matrix_path, const std::string& vector_path) {
  Matrix A = read_matrix_market(matrix_path);
  Vector b = read_vector(vector_path);
  if (A.rows() != b.size()) {
    throw DimensionMismatch("matrix '" + matrix_path + "' has " + std::to_string(A.rows()) +
                            " rows but vector '" + vector_path + "' has " +
                            std::to_string(b.size()) + " entries");
  }
  return TlsProblem(std::move(A), std::move(b));
}

}  // namespace tlscond::io
