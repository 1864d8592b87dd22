#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace urig {

// Parameter outside the model's domain (k > m, n = 0, p outside [0,1], ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A closed form whose denominator vanishes in the requested regime.
class DegenerateRegimeError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

// Too few events were observed for an estimate to be reported.
class InsufficientSamplesError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Misuse of a query (self-loop query, index out of range).
class UsageError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Unreadable or unwritable files.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text; carries the 1-based line number.
class ParseError : public IoError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : IoError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const char* what) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    throw ParameterError(std::string(what) + ": size overflows 64-bit arithmetic");
  }
  return a * b;
}

}  // namespace detail
}  // namespace urig
