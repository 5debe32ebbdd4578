// errors.hpp: Exception types shared across the library

#pragma once

#include <stdexcept>
#include <string>

namespace bhdimer {

// A numerical invariant (trace, Hermiticity, positivity, finiteness, leakage)
// was violated during a run.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Envelope fitting or frequency extraction failed to converge.
class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The schedule ends at or beyond the critical detuning; capture into the
// nonlinear resonance is not expected.
class CaptureConditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid run configuration (unknown key, bad value, inconsistent settings).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or unreadable state/config file.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace bhdimer
