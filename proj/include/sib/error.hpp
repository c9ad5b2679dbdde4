#pragma once

#include <stdexcept>
#include <string>

namespace sib {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid input data: bad face, inconsistent dimensions, unbounded target...
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Malformed scenario text. The message starts with the offending JSON path.
class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Operation called outside its domain (e.g. gauge subgradient on F-infinity).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Body kind not handled by an operation (support of an unbounded set...).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// Projection onto an empty halfspace intersection.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// No subgradient found in the normal-cone intersection; the witness from the
// inner minimal-time solve was not accurate enough.
class SubgradientSelectionError : public Error {
 public:
  using Error::Error;
};

}  // namespace sib
