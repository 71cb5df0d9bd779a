#pragma once

#include <complex>
#include <vector>

#include "hosm/lti.hpp"

namespace hosm {

/// A synthesized sliding variable sigma = C x with prescribed relative degree
/// and prescribed sliding-mode eigenvalues (the roots of gamma).
struct SlidingDesign {
    Matrix C;          // 1 x n
    Polynomial gamma;  // monic, degree n - r
    std::size_t target_relative_degree = 0;
    std::size_t realized_relative_degree = 0;
    std::vector<std::complex<double>> zeros; // sliding-mode eigenvalues, empty for r = n
    double controllability_condition = 0.0;  // 1-norm estimate from the P^T solve
};

/// C = e1 P^{-1} gamma(A) with e1 = [0 ... 0 1], realized through a transposed
/// linear solve against P^T (P is never inverted explicitly). deg(gamma) may be
/// 0..n-1 and fixes the relative degree r = n - deg(gamma).
///
/// The construction is post-verified: the realized relative degree must equal
/// r and the realized transfer-function numerator must match gamma within
/// verify_tol (relative); a mismatch signals numerical breakdown and throws
/// NumericalError carrying the achieved numerator.
SlidingDesign design_sliding_variable(const LtiSystem& sys, const Polynomial& gamma,
                                      double verify_tol = 1e-6);

/// The classical relative-degree-1 formula: beta must have degree n-1.
/// Same code path as design_sliding_variable.
SlidingDesign ackermann_utkin(const LtiSystem& sys, const Polynomial& beta,
                              double verify_tol = 1e-6);

/// Diagnostic report for an arbitrary output row; never throws for degenerate
/// C, it reports instead.
struct DesignReport {
    bool has_relative_degree = false;
    std::size_t realized_relative_degree = 0;     // valid when has_relative_degree
    Polynomial realized_numerator;
    Polynomial denominator;
    std::vector<std::complex<double>> zeros;      // roots of the realized numerator
    double max_zero_real_part = 0.0;              // -inf when there are no zeros
    bool minimum_phase = false;                   // vacuously true without zeros
    double gamma_mismatch = 0.0;                  // relative numerator-vs-gamma distance
};

DesignReport verify_design(const LtiSystem& sys, const Matrix& c, const Polynomial& gamma);

} // namespace hosm
