#pragma once

#include <stdexcept>
#include <string>

namespace frontlab {

/// A request that has no answer in the model: a wave speed outside the
/// existence range, an advection with no critical length, a precondition
/// that the inputs violate. The CLI maps these to exit status 1.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The numerics gave up: a bracket never closed, a trajectory exhausted its
/// budget, a time step went unstable. The CLI maps these to exit status 2.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NoCriticalLength : public DomainError {
public:
    using DomainError::DomainError;
};

class NoSemiWave : public DomainError {
public:
    using DomainError::DomainError;
};

class NoWave : public DomainError {
public:
    using DomainError::DomainError;
};

class NoFiniteWave : public DomainError {
public:
    using DomainError::DomainError;
};

class NoStationary : public DomainError {
public:
    using DomainError::DomainError;
};

/// Both ends of a threshold search classify the same way.
class NoBracket : public DomainError {
public:
    using DomainError::DomainError;
};

}  // namespace frontlab
