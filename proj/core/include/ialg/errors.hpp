#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ialg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid poset data or an element outside its poset.
class PosetError : public Error {
 public:
  using Error::Error;
};

/// Degrees that do not compose, inhomogeneous relations, bad entries.
class DegreeError : public Error {
 public:
  using Error::Error;
};

/// A configured ceiling (window size, component dimension, path count) was hit.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        message_(message) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

}  // namespace ialg
