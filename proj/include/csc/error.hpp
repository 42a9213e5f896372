#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace csc {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, std::vector<std::string> expected,
             const std::string& found);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::vector<std::string> expected_;
};

/// Raised when a finite carrier would exceed the configured element cap.
class SizeBlowup : public Error {
 public:
  SizeBlowup(const std::string& what, std::uint64_t cap)
      : Error("size blowup: " + what + " exceeds cap " + std::to_string(cap)) {}
};

/// File-level failures (missing files, malformed declarations).
class LoadError : public Error {
 public:
  using Error::Error;
};

}  // namespace csc
