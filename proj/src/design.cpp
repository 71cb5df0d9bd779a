#include "hosm/design.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace hosm {

namespace {

std::string coeffs_to_string(const Polynomial& p) {
    std::ostringstream os;
    os << "[";
    for (std::size_t k = 0; k < p.coefficients().size(); ++k) {
        if (k > 0) os << ", ";
        os << p[k];
    }
    os << "]";
    return os.str();
}

} // namespace

SlidingDesign design_sliding_variable(const LtiSystem& sys, const Polynomial& gamma,
                                      double verify_tol) {
    const std::size_t n = sys.order();
    if (!gamma.is_monic()) {
        throw Error("design_sliding_variable: gamma must be monic, got leading coefficient " +
                    std::to_string(gamma.leading_coefficient()));
    }
    if (gamma.degree() > n - 1) {
        throw Error("design_sliding_variable: deg(gamma) = " + std::to_string(gamma.degree()) +
                    " exceeds n-1 = " + std::to_string(n - 1));
    }
    const std::size_t r = n - gamma.degree();

    const Matrix p = controllability_matrix(sys.A, sys.B);

    // e1 = [0 ... 0 1]; y = e1 P^{-1} from P^T y^T = e1^T.
    Matrix e1_col(n, 1);
    e1_col(n - 1, 0) = 1.0;
    LinearSolveResult solved;
    try {
        solved = solve_linear(p.transpose(), e1_col);
    } catch (const SingularMatrixError& e) {
        throw Error(std::string("design_sliding_variable: uncontrollable system (") + e.what() +
                    ")");
    }

    SlidingDesign design;
    design.C = solved.x.transpose() * eval_matrix_polynomial(gamma, sys.A);
    design.gamma = gamma;
    design.target_relative_degree = r;
    design.controllability_condition = solved.condition;

    // Post-verification is part of the contract: the formula is exact in exact
    // arithmetic, so any mismatch is a numerical red flag.
    try {
        design.realized_relative_degree = relative_degree(sys, design.C);
    } catch (const NumericalError&) {
        throw NumericalError("design_sliding_variable: designed C has no relative degree; "
                             "condition estimate of P was " +
                             std::to_string(solved.condition));
    }
    if (design.realized_relative_degree != r) {
        throw NumericalError("design_sliding_variable: realized relative degree " +
                             std::to_string(design.realized_relative_degree) +
                             " differs from target " + std::to_string(r) +
                             "; condition estimate of P was " +
                             std::to_string(solved.condition));
    }
    const Polynomial numerator = transfer_function(sys, design.C).numerator;
    const double mismatch = Polynomial::relative_distance(numerator, gamma);
    if (!(mismatch <= verify_tol)) {
        throw NumericalError("design_sliding_variable: realized numerator " +
                             coeffs_to_string(numerator) + " differs from gamma " +
                             coeffs_to_string(gamma) + " by " + std::to_string(mismatch) +
                             " relative (tolerance " + std::to_string(verify_tol) +
                             "); condition estimate of P was " +
                             std::to_string(solved.condition));
    }

    if (gamma.degree() >= 1) design.zeros = polynomial_roots(gamma);
    return design;
}

SlidingDesign ackermann_utkin(const LtiSystem& sys, const Polynomial& beta, double verify_tol) {
    if (beta.degree() != sys.order() - 1) {
        throw Error("ackermann_utkin: deg(beta) = " + std::to_string(beta.degree()) +
                    ", expected n-1 = " + std::to_string(sys.order() - 1));
    }
    return design_sliding_variable(sys, beta, verify_tol);
}

DesignReport verify_design(const LtiSystem& sys, const Matrix& c, const Polynomial& gamma) {
    DesignReport report;
    try {
        report.realized_relative_degree = relative_degree(sys, c);
        report.has_relative_degree = true;
    } catch (const NumericalError&) {
        report.has_relative_degree = false;
        report.realized_relative_degree = 0;
    }

    const TransferFunction tf = transfer_function(sys, c);
    report.realized_numerator = tf.numerator;
    report.denominator = tf.denominator;
    report.gamma_mismatch = Polynomial::relative_distance(tf.numerator, gamma);

    if (!tf.numerator.is_zero() && tf.numerator.degree() >= 1) {
        report.zeros = polynomial_roots(tf.numerator);
    }
    report.max_zero_real_part = -std::numeric_limits<double>::infinity();
    for (const auto& z : report.zeros) {
        report.max_zero_real_part = std::max(report.max_zero_real_part, z.real());
    }
    report.minimum_phase = report.max_zero_real_part < 0.0; // vacuously true with no zeros
    return report;
}

} // namespace hosm
