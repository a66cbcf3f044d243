#pragma once

#include <stdexcept>
#include <string>

namespace ptwell {

// Base for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

// No sign change of the secular function where a level is expected:
// the pair has complexified or the parameters are outside the physical domain.
class RootNotFound : public Error {
public:
    using Error::Error;
};

class NoMerge : public Error {
public:
    using Error::Error;
};

class DegenerateMatching : public Error {
public:
    using Error::Error;
};

// The parity self-overlap vanished, so no quasi-parity sign can be assigned.
class AccidentalNode : public Error {
public:
    using Error::Error;
};

class NonPositiveCoefficient : public Error {
public:
    using Error::Error;
};

class InsufficientBasis : public Error {
public:
    using Error::Error;
};

class BasisMismatch : public Error {
public:
    using Error::Error;
};

}  // namespace ptwell
