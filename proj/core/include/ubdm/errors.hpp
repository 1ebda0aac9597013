#pragma once

#include <stdexcept>
#include <string>

namespace ubdm {

//! Base for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

//! A physical input lies outside the domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

//! Frequency below the mass gap: no propagating mode exists.
class EvanescentModeError : public DomainError {
 public:
  using DomainError::DomainError;
};

//! Inconsistent call shape (dimension mismatch, both/neither arguments, ...).
class UsageError : public Error {
 public:
  using Error::Error;
};

//! Missing or malformed configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

//! Quadrature failed to converge, a grid cannot resolve a feature, or a
//! validity hierarchy is violated.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class ResolutionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ValidityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

//! Fock truncation is saturated (population leaks into the top level).
class TruncationError : public Error {
 public:
  using Error::Error;
};

}  // namespace ubdm
