#pragma once

#include <stdexcept>
#include <string>

namespace freesub {

/// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Structural errors on inputs.
struct SchemaError : Error {
  explicit SchemaError(const std::string& field, const std::string& what)
      : Error("schema error at " + field + ": " + what),
        field(field),
        detail(what) {}
  std::string field;
  std::string detail;
};
struct IoError : Error {
  using Error::Error;
};
struct WrongKind : Error {
  using Error::Error;
};

// Group-theoretic validation failures.
struct NotASubgroup : Error {
  using Error::Error;
};
struct NotAHomomorphism : Error {
  using Error::Error;
};
struct NotInSubgroup : Error {
  using Error::Error;
};
struct UnknownGenerator : Error {
  using Error::Error;
};
struct FactorIndexError : Error {
  using Error::Error;
};
struct InvalidPermutation : Error {
  using Error::Error;
};

// Resource caps.
struct ClosureCapExceeded : Error {
  using Error::Error;
};
struct CapExceeded : Error {
  using Error::Error;
};

// Wreath-product domain errors.
struct DomainMismatch : Error {
  using Error::Error;
};
struct PointNotFixed : Error {
  explicit PointNotFixed(int point)
      : Error("permutation part does not fix coset " + std::to_string(point)),
        point(point) {}
  int point;
};
struct InvalidTransversal : Error {
  explicit InvalidTransversal(int coset, const std::string& what)
      : Error("transversal entry " + std::to_string(coset) + ": " + what),
        coset(coset) {}
  int coset;
};

// Internal consistency failures.  These indicate a bug, not a user error.
struct InternalInductionOrder : Error {
  using Error::Error;
};
struct FactorElementNotLocated : Error {
  using Error::Error;
};

}  // namespace freesub
