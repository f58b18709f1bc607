#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace abslog {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotAPartialOrder : public Error {
 public:
  using Error::Error;
};

class NotALattice : public Error {
 public:
  using Error::Error;
};

class UnknownElement : public Error {
 public:
  using Error::Error;
};

class NotDistributive : public Error {
 public:
  using Error::Error;
};

class CarrierTooLarge : public Error {
 public:
  CarrierTooLarge(const std::string& what, std::size_t size, std::size_t bound)
      : Error(what + ": size " + std::to_string(size) + " exceeds bound " + std::to_string(bound)),
        size_(size),
        bound_(bound) {}
  std::size_t size() const { return size_; }
  std::size_t bound() const { return bound_; }

 private:
  std::size_t size_;
  std::size_t bound_;
};

class UnknownOperation : public Error {
 public:
  using Error::Error;
};

class UnknownFormat : public Error {
 public:
  using Error::Error;
};

/// Raised for symbols that are not part of a signature (predicate or connective).
class UnknownSymbol : public Error {
 public:
  using Error::Error;
};

class NotMonotone : public Error {
 public:
  using Error::Error;
};

class WindowOverflow : public Error {
 public:
  using Error::Error;
};

class GridGuardViolated : public Error {
 public:
  using Error::Error;
};

/// Text input error carrying a 1-based line/column position.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        message_(msg),
        line_(line),
        column_(column) {}
  /// The message without its position prefix.
  const std::string& message() const { return message_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace abslog
