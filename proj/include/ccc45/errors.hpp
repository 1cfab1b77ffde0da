#pragma once

#include <stdexcept>
#include <string>

namespace ccc45 {

/// Bad argument to a library call (precondition violation).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed input text: CSV cells, JSON trees, cost files.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input parsed but has the wrong shape (ragged rows, empty file, k < 2).
class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value object failed its invariants (zero test cost, nonzero mc diagonal).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ccc45
