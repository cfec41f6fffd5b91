#pragma once

#include <stdexcept>
#include <string>

namespace binn {

/// Base class for every error the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid arguments, configuration or dataset contents.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// CSV / JSON parse failures.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Input dimensionality does not match a model.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A symmetric positive-definite factorization failed even after jitter escalation.
class SingularSystem : public Error {
public:
    using Error::Error;
};

}  // namespace binn
