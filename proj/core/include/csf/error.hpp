#pragma once

#include <stdexcept>
#include <string>

namespace csf {

// Base of every error raised by the library. The CLI maps these to exit status 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (bad vertex index, p not in (0,1), ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Caller violated a documented precondition (e.g. non-decomposable graph passed to cliques()).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Requested size exceeds a configured limit (enumeration cap, vertex set width).
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Law whose potentials would give an infinite or undefined density.
class InvalidLawError : public Error {
 public:
  using Error::Error;
};

class EmptySupportError : public Error {
 public:
  using Error::Error;
};

// Input density lacks the full support a construction needs.
class UnsupportedInputError : public Error {
 public:
  using Error::Error;
};

class InitialisationError : public Error {
 public:
  using Error::Error;
};

class InvalidLikelihoodError : public Error {
 public:
  using Error::Error;
};

// Malformed file contents.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace csf
