#pragma once

#include <stdexcept>
#include <string>

namespace toepker {

/// Malformed or out-of-contract input. Maps to CLI exit code 2.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// Truncation too small for the inputs (headroom rule or tail check).
class HeadroomError : public InputError {
 public:
  explicit HeadroomError(const std::string& what) : InputError("headroom: " + what) {}
};

/// u_i not orthonormal, v_i not orthogonal, or a zero v_i.
class PerturbationError : public InputError {
 public:
  explicit PerturbationError(const std::string& what)
      : InputError("perturbation invariant: " + what) {}
};

/// A root lies within the boundary margin of the unit circle.
class BoundaryAmbiguousError : public InputError {
 public:
  explicit BoundaryAmbiguousError(const std::string& what)
      : InputError("boundary-ambiguous root: " + what) {}
};

/// Polynomial has a root inside (or too close to) the closed disk.
class NotInvertibleError : public InputError {
 public:
  explicit NotInvertibleError(const std::string& what)
      : InputError("not invertible in H-infinity: " + what) {}
};

/// A product T_psi T_phi was requested outside the Toeplitz-product hypotheses.
class HypothesisViolatedError : public InputError {
 public:
  explicit HypothesisViolatedError(const std::string& what)
      : InputError("hypothesis violated: " + what) {}
};

/// Vector arguments of a construction do not satisfy its precondition.
class PreconditionError : public InputError {
 public:
  explicit PreconditionError(const std::string& what)
      : InputError("precondition: " + what) {}
};

/// Scalar denominator vanished numerically.
class DegenerateError : public std::runtime_error {
 public:
  explicit DegenerateError(const std::string& what)
      : std::runtime_error("degenerate: " + what) {}
};

/// Sum of nearly-parallel subspaces.
class ConditioningError : public std::runtime_error {
 public:
  explicit ConditioningError(const std::string& what)
      : std::runtime_error("ill-conditioned: " + what) {}
};

}  // namespace toepker
