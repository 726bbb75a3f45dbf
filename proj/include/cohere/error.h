#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cohere {

/// Base class for every recoverable error raised by the library. Input and
/// validation problems derive from this; broken internal invariants surface as
/// std::logic_error instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed proposition text. `offset` is the byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& expected, const std::string& input);

  std::size_t offset() const { return offset_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::string expected_;
};

/// Error tied to a line of a line-oriented file (rule DSL, lexicon, JSONL).
class LineError : public Error {
 public:
  LineError(std::string file, std::size_t line, const std::string& what);

  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

/// A value violates a documented invariant or precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cohere
