#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sds {

// Thrown by the text parsers. Line and column are 1-based.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + what),
        line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

// A LOUDS bit index that does not start a node description.
class NotANodeError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

} // namespace sds
