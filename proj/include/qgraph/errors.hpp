#pragma once

#include <stdexcept>
#include <string>

namespace qgraph {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input document; the message names the offending field.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Well-formed input that violates a type invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Argument outside the domain of an operation (e.g. t outside [0, l]).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Non-finite values during ODE integration.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// Root isolation failed to bracket within its search window.
class NumericalSearchError : public Error {
public:
    NumericalSearchError(const std::string& what, double lo, double hi)
        : Error(what), window_lo(lo), window_hi(hi) {}
    double window_lo;
    double window_hi;
};

/// s(z) requested too close to a Dirichlet eigenvalue.
class PoleProximityError : public Error {
public:
    PoleProximityError(const std::string& what, double nearest)
        : Error(what), nearest_mu(nearest) {}
    double nearest_mu;
};

/// Level outside the image of a band window.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Problem too large for a dense oracle.
class SizeError : public Error {
public:
    using Error::Error;
};

/// Internal self-check failed (indicates a bug, not bad input).
class ConsistencyError : public Error {
public:
    using Error::Error;
};

} // namespace qgraph
