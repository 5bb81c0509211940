#pragma once

#include <stdexcept>
#include <string>

namespace redint {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands of incompatible matrix size.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A matrix that should be anti-Hermitian/traceless or unitary/special is not.
class StructureError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// The moment equation has no solution for the supplied right-hand side.
class SolvabilityError : public Error {
 public:
  using Error::Error;
};

// No conjugation brings a phase point onto the SU(2) gauge slice.
class GaugeError : public Error {
 public:
  using Error::Error;
};

}  // namespace redint
