#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace skillguard {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that could not be parsed; carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), _line(line) {}

  std::size_t line() const { return _line; }

 private:
  std::size_t _line;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace skillguard
