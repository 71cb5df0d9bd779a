#pragma once

#include <cstddef>

#include "hosm/linalg.hpp"
#include "hosm/matrix.hpp"
#include "hosm/polynomial.hpp"

namespace hosm {

/// Single-input LTI system  xdot = A x + B (u + w).
///
/// Controllability is not an invariant of the type; operations that need it
/// check it themselves.
struct LtiSystem {
    Matrix A; // n x n
    Matrix B; // n x 1

    LtiSystem(Matrix a, Matrix b);

    std::size_t order() const noexcept { return A.rows(); }
};

/// g(s) = C (sI - A)^{-1} B as a ratio of real polynomials.
struct TransferFunction {
    Polynomial numerator;
    Polynomial denominator; // monic, degree n

    TransferFunction(Polynomial num, Polynomial den);
};

/// Normal-form data for output sigma = C x of relative degree r:
/// coordinates [eta; xi] = T x with T rows [B_perp; C; CA; ...; CA^{r-1}],
/// eta-dynamics etadot = A0 eta + B0 xi.
struct NormalFormData {
    Matrix T;       // n x n
    Matrix B_perp;  // (n-r) x n, orthonormal rows, B_perp * B = 0
    Matrix A0;      // (n-r) x (n-r) zero-dynamics matrix
    Matrix B0;      // (n-r) x r
    std::size_t relative_degree = 0;
};

/// Smallest r >= 1 with C A^{r-1} B significantly nonzero. The zero test is
/// scale-relative: |C A^{i-1} B| > tol_factor * ||C|| * ||A||^{i-1} * ||B||
/// (Frobenius norms). Throws NumericalError when no r <= n exists.
std::size_t relative_degree(const LtiSystem& sys, const Matrix& c, double tol_factor = 1e-9);

/// Numerator from the Faddeev-LeVerrier adjugate sequence, denominator from
/// the characteristic polynomial; no symbolic algebra involved.
TransferFunction transfer_function(const LtiSystem& sys, const Matrix& c);

struct CanonicalForm {
    LtiSystem system; // (Ahat, Bhat) in controller canonical (phase-variable) form
    Matrix T;         // Ahat = T^{-1} A T, Bhat = T^{-1} B
};

/// Controller canonical form: companion Ahat carrying the characteristic
/// coefficients (negated) in its last row, Bhat = e_n, T = P Phat^{-1}.
/// Throws for uncontrollable pairs.
CanonicalForm to_controller_canonical(const LtiSystem& sys);

/// Builds the coordinate change to normal form. B_perp is the orthonormal
/// basis of the left null space of B that is also orthogonal to the rows
/// C, CA, ..., CA^{r-2}, which keeps the stacked T well conditioned; a
/// condition estimate above 1e8 is reported as an error.
NormalFormData normal_form(const LtiSystem& sys, const Matrix& c);

/// Cascades a chain of k >= 1 integrators at the plant input; the new input
/// drives the chain, so any zero-padded output row gains k in relative degree.
LtiSystem augment_with_integrators(const LtiSystem& sys, std::size_t k);

} // namespace hosm
