#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace modlcp {

/// Base class for every error raised by the library.
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

/// A triangular solve hit a diagonal entry that is exactly zero (or absent).
class ZeroDiagonal : public Error {
 public:
  explicit ZeroDiagonal(std::ptrdiff_t row)
      : Error("zero diagonal entry at row " + std::to_string(row)), row_(row) {}
  std::ptrdiff_t row() const noexcept { return row_; }

 private:
  std::ptrdiff_t row_;
};

class NotLowerTriangular : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class NoSolution : public Error {
 public:
  using Error::Error;
};

class MultipleSolutions : public Error {
 public:
  using Error::Error;
};

}  // namespace modlcp
