#pragma once

#include <vector>

#include "hosm/matrix.hpp"
#include "hosm/polynomial.hpp"

namespace hosm {

/// [B | AB | A^2 B | ... | A^{n-1} B], columns in that order.
Matrix controllability_matrix(const Matrix& a, const Matrix& b);

/// p0 I + p1 A + ... + pd A^d by Horner's scheme in matrix form.
Matrix eval_matrix_polynomial(const Polynomial& p, const Matrix& a);

/// Monic det(lambda I - A) by the Faddeev-LeVerrier recursion.
Polynomial characteristic_polynomial(const Matrix& a);

/// Characteristic polynomial together with the adjugate sequence:
/// adj(s I - A) = N[0] s^{n-1} + N[1] s^{n-2} + ... + N[n-1].
struct FaddeevLeVerrier {
    Polynomial characteristic;     // ascending, degree n, monic
    std::vector<Matrix> adjugate;  // N[0..n-1]
};
FaddeevLeVerrier faddeev_leverrier(const Matrix& a);

} // namespace hosm
