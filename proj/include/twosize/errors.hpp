#pragma once

#include <stdexcept>
#include <string>

namespace twosize {

// Error taxonomy for the toolkit. Everything derives from Error so callers
// can catch the whole family at the CLI boundary.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A computed sampling probability left [0,1]; invalid parameter combination.
class OutOfRangeError : public Error {
 public:
  using Error::Error;
};

// rho_R does not attain its extrema at the boundary points.
class BoundaryViolationError : public Error {
 public:
  using Error::Error;
};

// rho(0) < 0 or rho(1) > 0; solution would leave [0,1].
class BoundarySignError : public Error {
 public:
  using Error::Error;
};

// Exact lattice recursion would exceed the state budget.
class StateSpaceTooLargeError : public Error {
 public:
  using Error::Error;
};

// Requested window mass at a degenerate p in {0,1}.
class DivisionAtBoundaryError : public Error {
 public:
  using Error::Error;
};

class UnsupportedOrderError : public Error {
 public:
  using Error::Error;
};

class InvalidStepError : public Error {
 public:
  using Error::Error;
};

// hitting_time_mc requires absorbing boundaries (rho(0)=0 and rho(1)=0).
class NonAbsorbingError : public Error {
 public:
  using Error::Error;
};

class QuadratureFailureError : public Error {
 public:
  using Error::Error;
};

class SingularEndpointError : public Error {
 public:
  using Error::Error;
};

// Stationary density does not exist (beta0 <= 0 or beta1 <= 0).
class NonIntegrableError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace twosize
