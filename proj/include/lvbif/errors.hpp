#pragma once

#include <stdexcept>
#include <string>

namespace lvbif {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad or inconsistent input configuration (CLI exit code 2).
struct ConfigError : Error {
    using Error::Error;
};
struct SignError : ConfigError {
    using ConfigError::ConfigError;
};
struct DivisionError : ConfigError {
    using ConfigError::ConfigError;
};

// Outside the covered sign/degeneracy cases (CLI exit code 3).
struct UnsupportedCase : Error {
    using Error::Error;
};

struct NotApplicable : Error {
    using Error::Error;
};
struct NoRoot : Error {
    using Error::Error;
};
struct ConstraintViolation : Error {
    using Error::Error;
};
struct DegenerateJacobian : Error {
    using Error::Error;
};
struct HypothesisViolation : Error {
    using Error::Error;
};
struct CollisionMismatch : Error {
    using Error::Error;
};
struct SectorTooThin : Error {
    using Error::Error;
};
struct OnCurve : Error {
    using Error::Error;
};
struct StepFailure : Error {
    using Error::Error;
};

} // namespace lvbif
