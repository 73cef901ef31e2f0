#pragma once

#include <stdexcept>
#include <string>

namespace entprobe {

// Operand dimensions do not fit the operation.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A value lies outside the mathematical domain of the operation
// (non-unitary input, negative noise, |x| >= 1, invalid POVM seed, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A requested dimension or enumeration exceeds the configured cap.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// The group representation is not irreducible.
class UnsupportedRepresentation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An internal numerical routine failed to converge or lost accuracy.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace entprobe
