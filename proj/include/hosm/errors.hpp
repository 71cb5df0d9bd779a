#pragma once

#include <stdexcept>
#include <string>

namespace hosm {

/// Base class for all errors thrown by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Incompatible matrix or vector dimensions.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A pivot fell below the singularity threshold during factorization.
class SingularMatrixError : public Error {
public:
    SingularMatrixError(const std::string& what, std::size_t pivot_index)
        : Error(what), pivot_index_(pivot_index) {}

    /// Column index of the offending pivot.
    std::size_t pivot_index() const noexcept { return pivot_index_; }

private:
    std::size_t pivot_index_;
};

/// Numerical breakdown: non-convergence, failed post-verification, ill-conditioning.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Invalid scenario file or configuration (reported with the field path).
class ScenarioError : public Error {
public:
    using Error::Error;
};

} // namespace hosm
