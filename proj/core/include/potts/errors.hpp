#pragma once

#include <stdexcept>
#include <string>

namespace potts {

// Base for every error raised by the library. The subclasses map onto the
// command line exit codes (see tools/cli.hpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed instance file. The message names the offending line.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Invalid parameters passed to an operation.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// The instance (or a sub-instance produced under truncation) has no
// configuration of positive weight.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// A work, size or time budget was exhausted.
class BudgetError : public Error {
 public:
  using Error::Error;
};

// An internal invariant did not hold. Indicates a bug.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace potts
