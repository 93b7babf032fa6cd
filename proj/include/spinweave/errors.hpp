#pragma once

#include <stdexcept>
#include <string>

namespace spinweave {

/// Base class for all spinweave errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid sizes, ranges, shapes or parameters (CLI exit code 1).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Syntax or semantic errors in config or network files (CLI exit code 1).
/// Messages carry a line number when one is known.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Violated numerical-validity guarantees: failed decompositions,
/// norm drift, negative density eigenvalues (CLI exit code 2).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace spinweave
