#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace condsplit {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a sentence is empty or whitespace-only.
class EmptyInputError : public Error {
 public:
  using Error::Error;
};

// Malformed input data (JSONL, IOB, UTF-8). `line()` is 1-based, 0 if unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Well-formed data that breaks a model invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace condsplit
