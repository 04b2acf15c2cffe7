#pragma once

#include <stdexcept>
#include <string>

namespace darm {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Malformed FIMI input; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class PartitionError : public Error {
 public:
  using Error::Error;
};

// A site or the center received a message that violates the round contract.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// Pipeline invariant broken; indicates a bug rather than bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace darm
