#pragma once

#include <stdexcept>
#include <string>

namespace nhqg {

// Base of all numerical-domain failures thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Angle extraction requested too close to the south pole, where the
// azimuthal angle is ill-defined (the gauge string of the monopole
// connection pierces the sphere there).
class StringProximityError : public Error {
public:
    using Error::Error;
};

// Two tracked levels approached closer than the allowed gap along a loop,
// or level tracking failed to return to its starting branch on closure.
class LevelCrossingError : public Error {
public:
    using Error::Error;
};

// An iteration or discretization failed to reach the requested accuracy.
class NonConvergenceError : public Error {
public:
    using Error::Error;
};

// Evaluation requested exactly at r = eps, where the closed-form phase
// limits blow up.
class ExceptionalPointError : public Error {
public:
    using Error::Error;
};

// A Carlson-integral argument sits on the negative real axis, where the
// principal square root used by the duplication iteration is cut.
class BranchCutError : public Error {
public:
    using Error::Error;
};

class SingularModulusError : public Error {
public:
    using Error::Error;
};

class SingularArgumentError : public Error {
public:
    using Error::Error;
};

// g lies on the circle h^2 + delta^2 = 1, where the mode-sum integrand has
// a pole on the integration contour.
class ExceptionalCircleError : public Error {
public:
    using Error::Error;
};

// The requested level pair is not the closest pair at the given point.
class AmbiguousPairError : public Error {
public:
    using Error::Error;
};

// Adaptive step size underflowed (typically when the trajectory runs into
// an exceptional point).
class StiffnessError : public Error {
public:
    using Error::Error;
};

// The adjoint-pair overlap invariant drifted beyond its budget.
class ToleranceError : public Error {
public:
    using Error::Error;
};

// A per-step phase increment exceeded pi/2, so the accumulated complex log
// cannot be unwrapped reliably.
class UnwrapError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace nhqg
