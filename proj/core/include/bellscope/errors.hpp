#pragma once

#include <stdexcept>
#include <string>

namespace bellscope {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A backend decomposition failed to converge or produced invalid output.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented preconditions.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive enumeration would exceed the configured evaluation budget.
class EnumerationLimitError : public Error {
 public:
  using Error::Error;
};

/// An input file could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace bellscope
