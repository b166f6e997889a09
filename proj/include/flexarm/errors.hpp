#pragma once

#include <stdexcept>
#include <string>

namespace flexarm {

// Base for everything thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad user input: config values, preconditions on parameters.
struct ValidationError : Error {
    using Error::Error;
};

// Numerical failure: root isolation, quadrature non-convergence,
// singular mass matrix, step-size underflow, infeasible gain synthesis.
struct NumericalError : Error {
    using Error::Error;
};

// File system / parsing trouble.
struct IoError : Error {
    using Error::Error;
};

} // namespace flexarm
