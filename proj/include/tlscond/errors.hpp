#pragma once

#include <stdexcept>
#include <string>

namespace tlscond {

// Base of every error raised by the library. The CLI maps each subclass to
// its own exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// No unique TLS solution: sigma_tilde_n is not separated from sigma_{n+1},
// v_{n+1,n+1} vanishes, or a denominator sigma_i^2 - sigma_{n+1}^2 is not positive.
class NotGeneric : public Error {
 public:
  using Error::Error;
};

// A relative measure divides by a norm of L*x that is zero.
class SelectionNullSolution : public Error {
 public:
  using Error::Error;
};

class NotInSubspace : public Error {
 public:
  using Error::Error;
};

// An explicit-matrix oracle was asked to build something above its size cap,
// or its formula is undefined for the instance (e.g. r = 0).
class OracleRefused : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& source, long line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  long line() const noexcept { return line_; }

 private:
  long line_;
};

}  // namespace tlscond
