#pragma once

#include <stdexcept>
#include <string>

namespace gsx {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller-side mistakes: bad shapes, out-of-range parameters, unsupported modes.
class InvalidInput : public Error {
public:
    using Error::Error;
};

class DimensionError : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class InvalidMode : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class CapacityError : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

// Failures detected while computing: lost precision, broken structure.
class NumericError : public Error {
public:
    using Error::Error;
};

class StructureError : public NumericError {
public:
    using NumericError::NumericError;
};

class NonGaussianState : public NumericError {
public:
    using NumericError::NumericError;
};

class TrackingError : public NumericError {
public:
    using NumericError::NumericError;
};

// The two states live in different fermion-parity sectors.
class ParityError : public Error {
public:
    using Error::Error;
};

} // namespace gsx
