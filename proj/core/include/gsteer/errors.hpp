#pragma once

#include <stdexcept>
#include <string>

namespace gsteer {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes or partitions that do not fit together.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Arguments outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A block that has to be inverted is numerically singular.
class IllConditionedError : public Error {
 public:
  using Error::Error;
};

/// Two-mode local invariants admit no real standard form.
class InconsistentInvariantsError : public Error {
 public:
  using Error::Error;
};

/// The caller skipped a required reduction step.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class DegenerateDataError : public Error {
 public:
  using Error::Error;
};

/// Malformed covariance-matrix or config file.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace gsteer
