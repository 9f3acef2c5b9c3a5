#pragma once

#include <stdexcept>
#include <string>

namespace linjac {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ChartMismatch : public Error {
 public:
  using Error::Error;
};

class UnknownVariable : public Error {
 public:
  using Error::Error;
};

/// Evaluation that would need a transcendental value of exp(t).
class TranscendentalEval : public Error {
 public:
  using Error::Error;
};

class MissingAssignment : public Error {
 public:
  using Error::Error;
};

/// Precondition failure on a structured input (non-Poisson bivector,
/// invalid algebroid, rank mismatch, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

}  // namespace linjac
