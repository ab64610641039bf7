#pragma once

#include <stdexcept>
#include <string>

namespace nhse {

// Solver failure, non-convergence or loss of representability.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Non-Hermitian growth pushed amplitudes past the representable range.
class OverflowError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Fixed-step integration would leave the stability region.
class StepSizeError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Requested circuit cannot be built with positive components.
class SynthesisError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A parameter combination the closed forms do not cover (e.g. J_L J_R = 0).
class UnsupportedConfiguration : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace nhse
