#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ktm {

// Base for every error the library raises; the C API maps each subclass to
// a status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line) : Error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Raised for invalid user-facing arguments such as k < 3.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Raised when a caller breaks an operation's precondition (unknown edge,
// edge already deleted, stale index).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

class ExactCapExceeded : public Error {
 public:
  using Error::Error;
};

class EmptyTruss : public Error {
 public:
  EmptyTruss() : Error("empty truss") {}
};

}  // namespace ktm
