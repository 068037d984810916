#pragma once

#include <stdexcept>
#include <string>

namespace cylflow {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidGrid : public Error {
 public:
  using Error::Error;
};

class GridMismatch : public Error {
 public:
  using Error::Error;
};

class OutOfDomain : public Error {
 public:
  using Error::Error;
};

class SolverFailure : public Error {
 public:
  using Error::Error;
};

class IncompatibleData : public Error {
 public:
  using Error::Error;
};

/// A runtime check of one of the existence-theory hypotheses failed
/// (positive axial speed, finite streamlines, admissible vorticity, ...).
class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

class StagnationDetected : public HypothesisViolation {
 public:
  using HypothesisViolation::HypothesisViolation;
};

class LengthExceeded : public HypothesisViolation {
 public:
  using HypothesisViolation::HypothesisViolation;
};

class DegenerateInflow : public HypothesisViolation {
 public:
  using HypothesisViolation::HypothesisViolation;
};

class ValidationFailure : public HypothesisViolation {
 public:
  using HypothesisViolation::HypothesisViolation;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cylflow
