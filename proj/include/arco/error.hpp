#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace arco {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Syntax error in one of the text formats (N-Triples, Turtle, query, record
// XML, configuration). `line` and `column` are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column = 0)
      : Error(format(message, line, column)), message_(message), line_(line), column_(column) {}

  const std::string& message() const noexcept { return message_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& message, std::size_t line, std::size_t column) {
    if (line == 0) return message;
    std::string out = "line " + std::to_string(line);
    if (column != 0) out += ", column " + std::to_string(column);
    return out + ": " + message;
  }

  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

// I/O failure (missing file, unreadable directory).
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace arco
