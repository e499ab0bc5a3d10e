#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chargekit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A coordinate lies outside Ω = [0,1) (or the closed range a primitive allows).
class OutOfRange : public Error {
 public:
  using Error::Error;
};

class NotPositive : public Error {
 public:
  using Error::Error;
};

class EmptyFamily : public Error {
 public:
  using Error::Error;
};

class NotDisjoint : public Error {
 public:
  using Error::Error;
};

/// A query set lies outside the λ-completion.
class NotMember : public Error {
 public:
  using Error::Error;
};

/// Inconsistent dimensions or otherwise ill-formed structured input.
class Malformed : public Error {
 public:
  using Error::Error;
};

class BadInput : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

/// Text that does not match a grammar. Carries a 1-based position.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        message_(what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  /// The diagnostic without the position prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace chargekit
