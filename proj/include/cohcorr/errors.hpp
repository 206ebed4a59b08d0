#pragma once

#include <stdexcept>
#include <string>

namespace cohcorr {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A kernel evaluated to a negative overlap, which the state model cannot represent.
class UnsupportedOverlap : public DomainError {
 public:
  using DomainError::DomainError;
};

// Odd-parity superposition of identical branches: the state is null.
class DivergentNormalization : public Error {
 public:
  using Error::Error;
};

class InvalidDensity : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class AsymmetricInput : public Error {
 public:
  using Error::Error;
};

}  // namespace cohcorr
