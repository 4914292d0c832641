#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace polariton {

// Bad or inconsistent user input.
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QuadratureError : NumericalError {
    QuadratureError(const std::string& what, double achieved_abs, double requested_abs)
        : NumericalError(what), achieved(achieved_abs), requested(requested_abs) {}
    double achieved;
    double requested;
};

struct RootFindError : NumericalError {
    RootFindError(const std::string& what, std::complex<double> last_iterate, int iters)
        : NumericalError(what), last(last_iterate), iterations(iters) {}
    std::complex<double> last;
    int iterations;
};

// n + w dn/dw vanished while forming a group velocity.
struct SingularDispersionError : NumericalError {
    using NumericalError::NumericalError;
};

// Quadratic boundary expansion with alpha = 0.
struct ExpansionSingularError : NumericalError {
    using NumericalError::NumericalError;
};

}  // namespace polariton
