#pragma once

#include <stdexcept>
#include <string>

namespace qcenter {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live over different variable sets, truncation orders or algebras.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text (polynomial expressions, scenario files).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Input parsed but violates a structural invariant (Jacobi, antisymmetry, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Quantum hamiltonians do not define an algebra homomorphism from U_hbar(g).
class InvalidActionError : public Error {
 public:
  using Error::Error;
};

}  // namespace qcenter
