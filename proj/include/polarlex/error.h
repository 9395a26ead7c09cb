#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polarlex {

// Malformed input text. `line` is 1-based; 0 when the error is not tied to a
// particular line.
class FormatError : public std::runtime_error {
 public:
  FormatError(std::size_t line, const std::string& message)
      : std::runtime_error(line == 0 ? message
                                     : "line " + std::to_string(line) + ": " +
                                           message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Caller violated an operation's precondition (empty input, too few raters...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input is well formed but inconsistent with the data it is applied to.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A cell that already holds a tag was written without the amend flag.
class ConflictError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace polarlex
