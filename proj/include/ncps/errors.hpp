#pragma once

#include <stdexcept>
#include <string>

namespace ncps {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A substitution would divide by zero or needs an inverse that is not representable.
class InvalidBinding : public Error {
 public:
  using Error::Error;
};

/// Normal ordering produced a word longer than the configured degree guard.
class DegreeOverflow : public Error {
 public:
  using Error::Error;
};

class UnknownParticle : public Error {
 public:
  using Error::Error;
};

/// Operation needs a different number of particles than the system holds.
class WrongParticleCount : public Error {
 public:
  using Error::Error;
};

class InvalidQuantumNumbers : public Error {
 public:
  using Error::Error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Radial moment <r^s> does not exist for the requested state.
class DivergentMoment : public Error {
 public:
  using Error::Error;
};

/// First-order coordinate correction has no finite closed form for this level.
class DivergentLevel : public Error {
 public:
  using Error::Error;
};

class NotComputable : public Error {
 public:
  using Error::Error;
};

class GridTooSmall : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

class InsufficientSpan : public Error {
 public:
  using Error::Error;
};

/// Malformed input file; message carries the line number.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input whose contents violate a record invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace ncps
