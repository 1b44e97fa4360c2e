#pragma once
#include <stdexcept>
#include <string>

namespace graphnls {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid parameters (p <= 0, omega <= 0, N < 3, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

// Fields living on different grids were combined.
class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& what) : Error(what) {}
};

// An iterative solver (bisection, Newton, fixed point) did not converge,
// or a bracketing scan failed to find a root it must find.
class SolverError : public Error {
public:
    explicit SolverError(const std::string& what) : Error(what) {}
};

// A state that the theory forbids was observed (e.g. u(0) = u'(0) = 0).
class InconsistencyError : public Error {
public:
    explicit InconsistencyError(const std::string& what) : Error(what) {}
};

// The modulation decomposition left its validity neighborhood. This is the
// instability signal and is reported upward, never treated as fatal by track().
class DecompositionError : public Error {
public:
    explicit DecompositionError(const std::string& what) : Error(what) {}
};

} // namespace graphnls
