#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace foldkit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user input (quiver files, weights, fixtures).
class InputError : public Error {
public:
  using Error::Error;
};

/// Syntax error in a text input, carrying a 1-based line and column.
class ParseError : public InputError {
public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : ParseError({}, line, column, what) {}
  ParseError(const std::string& file, std::size_t line, std::size_t column, const std::string& what)
      : InputError((file.empty() ? std::string() : file + ", ") + "line " + std::to_string(line) + ", column " +
                   std::to_string(column) + ": " + what),
        line_(line),
        column_(column),
        detail_(what) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  /// The message without the location.
  const std::string& detail() const noexcept { return detail_; }

private:
  std::size_t line_;
  std::size_t column_;
  std::string detail_;
};

/// A computation reached a state the mathematics says is impossible.
class InternalError : public Error {
public:
  using Error::Error;
};

} // namespace foldkit
