#pragma once

#include <stdexcept>
#include <string>

namespace cilie {

// Failures fall into three families, which the CLI maps onto exit codes:
// malformed input (1), violated mathematical preconditions (2) and
// exhausted resource caps (3).

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  using InputError::InputError;
};

class MathError : public Error {
 public:
  using Error::Error;
};

/// The evaluation point does not lie on the zero locus of the map.
class OffLocusError : public MathError {
 public:
  using MathError::MathError;
};

/// A generator is not homogeneous for the declared weights.
class GradingError : public MathError {
 public:
  using MathError::MathError;
};

class NotCompleteIntersectionError : public MathError {
 public:
  using MathError::MathError;
};

/// Some f_j has a nonzero linear part at the origin.
class ReduceVariablesError : public MathError {
 public:
  using MathError::MathError;
};

class DiagramError : public MathError {
 public:
  using MathError::MathError;
};

class ExactnessError : public MathError {
 public:
  using MathError::MathError;
};

class NotAComplexError : public MathError {
 public:
  using MathError::MathError;
};

class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace cilie
