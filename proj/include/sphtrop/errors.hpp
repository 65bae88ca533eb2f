#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sphtrop {

/// The series is zero to working precision, so its valuation cannot be
/// told apart from "very large".
class IndeterminateValuation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, const std::string& message)
      : std::runtime_error("offset " + std::to_string(offset) + ": " + message),
        offset_(offset),
        message_(message) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t offset_;
  std::string message_;
};

class MissingAssignment : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The supplied point does not lie on the ambient space (singular matrix,
/// determinant not 1 on SL_n, ...).
class NotOnSpace : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class MixedSpaces : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace sphtrop
