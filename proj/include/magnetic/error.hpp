#pragma once

#include <stdexcept>
#include <string>

namespace magnetic {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on user-supplied data was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A ball could not be narrowed enough to certify an integer, even after
/// precision and cutoff escalation.
class CertificationFailure : public Error {
 public:
  using Error::Error;
};

/// A series coefficient was requested beyond its validity range.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed (two routes disagree, etc.).
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace magnetic
