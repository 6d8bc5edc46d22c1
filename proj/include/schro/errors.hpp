#pragma once

#include <stdexcept>
#include <string>

namespace schro {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// Malformed circuit: bad qubit index, overlapping wires, register mismatch.
class CircuitError : public Error {
 public:
  explicit CircuitError(const std::string& message) : Error(message) {}
};

/// A parameter lies outside the domain where an operation is defined.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& message) : Error(message) {}
};

/// Operand shapes disagree.
class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& message) : Error(message) {}
};

/// A dense or statevector size cap was exceeded.
class CapacityError : public Error {
 public:
  explicit CapacityError(const std::string& message) : Error(message) {}
};

}  // namespace schro
