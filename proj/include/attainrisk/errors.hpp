#pragma once

#include <stdexcept>
#include <string>

namespace attainrisk {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input or a violated construction invariant. CLI exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class SpaceMismatch : public ValidationError {
 public:
  SpaceMismatch() : ValidationError("operands live on different probability spaces") {}
};

// Well-formed input on which an operation's precondition fails. CLI exit code 3.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class KBoundednessViolation : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// Unreadable input file. CLI exit code 4.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace attainrisk
