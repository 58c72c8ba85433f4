#pragma once

#include <stdexcept>
#include <string>

namespace dampwave {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside a documented domain or hypothesis.
class DomainError : public Error {
public:
    using Error::Error;
};

class QuadratureError : public Error {
public:
    using Error::Error;
};

// Overflow or non-finite values produced during a computation.
class NumericalError : public Error {
public:
    using Error::Error;
};

}  // namespace dampwave
