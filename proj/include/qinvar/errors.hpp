#pragma once

#include <stdexcept>
#include <string>

namespace qinvar {

// Base for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A probability fell outside the open interval (eps_b, 1 - eps_b).
class BoundaryViolation : public Error {
 public:
  using Error::Error;
};

class NotUnitVector : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

// The requested cosines are not the Gram matrix of any three unit vectors.
class InfeasibleGram : public Error {
 public:
  using Error::Error;
};

class DegenerateValues : public Error {
 public:
  using Error::Error;
};

// Commutator averages neither all vanish nor all differ from zero.
class MixedEvidence : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace qinvar

namespace qinvar {

// A model document is malformed or violates a model invariant.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace qinvar
