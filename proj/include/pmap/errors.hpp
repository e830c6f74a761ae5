#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pmap {

// Base of everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::string const& msg, std::size_t line, std::size_t col)
      : Error("parse error at " + std::to_string(line) + ":" +
              std::to_string(col) + ": " + msg),
        msg_(msg),
        line_(line),
        col_(col) {}
  std::string const& message() const noexcept { return msg_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return col_; }

 private:
  std::string msg_;
  std::size_t line_;
  std::size_t col_;
};

// Caller violated a documented precondition.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Point or object outside the domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

class DepthExhausted : public Error {
 public:
  using Error::Error;
};

class AdmissibilityFailure : public Error {
 public:
  using Error::Error;
};

class NACell : public Error {
 public:
  using Error::Error;
};

class NotFiniteType : public Error {
 public:
  using Error::Error;
};

class NotCBGenerated : public Error {
 public:
  using Error::Error;
};

}  // namespace pmap
