#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace evlogic {

/// Malformed formula text, proof script or world literal.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + what),
        message_(what),
        line_(line),
        column_(column) {}

  /// The description without the position prefix.
  const std::string& message() const { return message_; }

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

/// An input exceeds a desk-scale bound (tautology letters, hotel depth, ...).
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A model document or model query is inconsistent with the model.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace evlogic
