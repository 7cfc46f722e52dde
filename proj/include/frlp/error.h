#pragma once

#include <stdexcept>
#include <string>

namespace frlp {

// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed model or mismatched dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Pivoting stalled or the tableau lost too much precision.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Argument outside the documented domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A point handed to a checker does not assign every variable.
class MissingVariableError : public Error {
 public:
  using Error::Error;
};

// A supposedly feasible point violates its program.
class InfeasibleInputError : public Error {
 public:
  using Error::Error;
};

// Problem too large for an exhaustive or dense method.
class SizeError : public Error {
 public:
  using Error::Error;
};

}  // namespace frlp
