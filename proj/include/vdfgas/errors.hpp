#pragma once

#include <stdexcept>
#include <string>

namespace vdfgas {

// Base class for every error this library throws.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidModulusError : Error {
    using Error::Error;
};

struct InvalidInputError : Error {
    using Error::Error;
};

struct MalformedBigNumberError : Error {
    using Error::Error;
};

struct InvalidDeltaError : Error {
    using Error::Error;
};

struct MalformedProofError : Error {
    using Error::Error;
};

struct InvalidProbabilityError : Error {
    using Error::Error;
};

struct InvalidCoefficientsError : Error {
    using Error::Error;
};

struct SingularFitError : Error {
    using Error::Error;
};

struct SelectorMismatchError : Error {
    using Error::Error;
};

struct MalformedPayloadError : Error {
    using Error::Error;
};

struct GenerationFailureError : Error {
    using Error::Error;
};

}  // namespace vdfgas
