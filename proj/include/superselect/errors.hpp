#pragma once

#include <stdexcept>

namespace superselect {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inconsistent configuration: arity mismatch, empty species subset, a
/// global charge component used where a gauged one is required.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// Unknown species id, charge component or scenario name.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// States or labels with mismatched register counts.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Input outside an operation's domain (unnormalized state, trivial cut,
/// malformed density matrix, empty sector).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The basis builder could not produce an entangled vector.
class BuilderError : public Error {
 public:
  using Error::Error;
};

/// A registry or state file does not follow its JSON schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace superselect
