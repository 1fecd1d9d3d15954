#pragma once

#include <stdexcept>
#include <string>

namespace wfano {

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input or call (empty tuple, unknown family number, bad flag).
class UsageError : public Error {
 public:
  using Error::Error;
};

// The input is well-formed but the requested computation does not apply.
class DomainError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A sampled member failed a genericity predicate (zero pivot, repeated root,
// no rational solution for a normalizing constant).
class GenericityError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A normalization plan is not triangular, or a later pass undid an earlier one.
class PlanError : public DomainError {
 public:
  using DomainError::DomainError;
};

class IoError : public DomainError {
 public:
  using DomainError::DomainError;
};

class SchemaError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Two routes to the same quantity disagreed.
class InconsistencyError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace wfano
