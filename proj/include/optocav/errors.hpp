// errors.hpp — exception types shared by every optocav module

#pragma once

#include <stdexcept>
#include <string>

namespace optocav {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class DimensionTooLarge : public Error {
public:
    using Error::Error;
};

class BadDimension : public Error {
public:
    using Error::Error;
};

class NotHermitian : public Error {
public:
    using Error::Error;
};

class NonFinite : public Error {
public:
    using Error::Error;
};

class BadOccupation : public Error {
public:
    using Error::Error;
};

class InvalidState : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// analytic track
class DegenerateCoupling : public Error {
public:
    using Error::Error;
};

class OffResonance : public Error {
public:
    using Error::Error;
};

} // namespace optocav
