#pragma once

#include <iosfwd>
#include <string>

#include "tlscond/tls_core.hpp"

namespace tlscond::io {

enum class MarketLayout { array, coordinate };

// Reads a real general Matrix Market file (array or coordinate) into a dense
// matrix. Integer fields are accepted as real. `source` names the stream in
// error messages. Throws ParseError with the offending line number.
Matrix read_matrix_market(std::istream& in, const std::string& source = "<stream>");
Matrix read_matrix_market(const std::string& path);

// Writes with 17 significant digits so that reading back is bit-exact.
void write_matrix_market(std::ostream& out, const Matrix& M,
                         MarketLayout layout = MarketLayout::array);
void write_matrix_market(const std::string& path, const Matrix& M,
                         MarketLayout layout = MarketLayout::array);

// A vector file is either a Matrix Market array with one column or plain
// text with one number per line ('#' starts a comment).
Vector read_vector(std::istream& in, const std::string& source = "<stream>");
Vector read_vector(const std::string& path);
void write_vector(std::ostream& out, const Vector& v);
void write_vector(const std::string& path, const Vector& v);

// Loads A from a Matrix Market file and b from a vector file.
TlsProblem load_problem(const std::string& matrix_path, const std::string& vector_path);

}  // namespace tlscond::io
