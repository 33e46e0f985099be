#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace kamnf {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input document (bad JSON, wrong types, unknown fields).
struct ParseError : Error {
    using Error::Error;
};

// Structurally valid input violating a model constraint.
struct ValidationError : Error {
    using Error::Error;
};

// omega is exactly p/q for some q <= 1000; the small-divisor theory is void.
struct RationalOmegaError : ValidationError {
    using ValidationError::ValidationError;
};

// d/dr applied to an r^{1/2} term would leave the monomial lattice (n < 0).
struct FractionalPoleError : Error {
    using Error::Error;
};

// Homological right-hand side contains a (k, m) = (0, 0) mode.
struct ResonantModeError : Error {
    using Error::Error;
};

// |m - k omega| below the hard floor 1e-13; division refused.
struct SmallDivisorUnderflow : Error {
    using Error::Error;
};

// Adaptive quadrature failed to reach the requested tolerance.
struct QuadratureError : Error {
    using Error::Error;
};

// A degree pre- or post-condition of the quadratic step failed.
struct DegreeViolation : Error {
    using Error::Error;
};

// Analyticity domain shrank to nothing within the requested schedule steps.
struct DomainExhausted : Error {
    using Error::Error;
};

// Exhaustive search ended without an admissible value.
struct NotFound : Error {
    using Error::Error;
};

// The truncated perturbation carries a kernel component A_n r^{n/2} above
// tolerance, so the iteration cannot continue; the stability question passes
// to the twist criterion.  `degree` is the n of the first offending monomial.
struct NonLinearizableError : Error {
    double kernel_mass;
    int degree;
    std::complex<double> coefficient;

    NonLinearizableError(const std::string& msg, double mass, int n,
                         std::complex<double> c)
        : Error(msg), kernel_mass(mass), degree(n), coefficient(c) {}
};

}  // namespace kamnf
