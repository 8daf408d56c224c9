#pragma once

#include <stdexcept>
#include <string>

namespace gauss_neumann {

/// Input outside the mathematical domain of an operation (non-finite
/// coordinates, points outside the reference strip, zero fields).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Invalid tuning parameter (tolerances, counts, step sizes).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Eigensolver or root finder failed to converge.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Degenerate or invalid triangulation.
class MeshError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace gauss_neumann
