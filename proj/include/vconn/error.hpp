#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vconn {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed graph text. `line()` is 1-based; 0 when the problem is not tied
// to a specific line (e.g. an empty graph).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A query whose arguments violate the documented contract (s == t, adjacent
// terminals, non-independent terminal sets, parameters out of range, ...).
class InvalidQuery : public Error {
 public:
  using Error::Error;
};

}  // namespace vconn
