#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gpc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by the pattern/query/rule-set parsers.
class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t line, std::size_t column,
             std::vector<std::string> expected = {})
      : Error(std::move(message)),
        line_(line),
        column_(column),
        expected_(std::move(expected)) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::vector<std::string> expected_;
};

// Evaluation exceeded the configured answer ceiling.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace gpc
