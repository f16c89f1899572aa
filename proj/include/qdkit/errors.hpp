#pragma once

#include <stdexcept>
#include <string>

namespace qdkit {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A configurable size limit (ball size, representation dimension) was hit.
class ResourceCapError : public Error {
 public:
  using Error::Error;
};

/// An iterative method did not reach its tolerance.
class NonConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A quantity was requested whose value truncation could distort.
class ExactnessError : public Error {
 public:
  using Error::Error;
};

/// A certificate or witness failed verification.
class VerificationError : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized input.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace qdkit
