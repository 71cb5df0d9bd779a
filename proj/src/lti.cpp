#include "hosm/lti.hpp"

#include <cmath>
#include <string>

namespace hosm {

LtiSystem::LtiSystem(Matrix a, Matrix b) : A(std::move(a)), B(std::move(b)) {
    if (A.rows() == 0) throw DimensionError("LtiSystem: state dimension must be >= 1");
    if (A.rows() != A.cols()) {
        throw DimensionError("LtiSystem: A is " + std::to_string(A.rows()) + "x" +
                             std::to_string(A.cols()) + ", expected square");
    }
    if (B.rows() != A.rows() || B.cols() != 1) {
        throw DimensionError("LtiSystem: B is " + std::to_string(B.rows()) + "x" +
                             std::to_string(B.cols()) + ", expected " +
                             std::to_string(A.rows()) + "x1");
    }
}

TransferFunction::TransferFunction(Polynomial num, Polynomial den)
    : numerator(std::move(num)), denominator(std::move(den)) {
    if (!denominator.is_monic()) {
        throw Error("TransferFunction: denominator must be monic");
    }
    if (!numerator.is_zero() && numerator.degree() >= denominator.degree()) {
        throw Error("TransferFunction: numerator degree " +
                    std::to_string(numerator.degree()) + " not below denominator degree " +
                    std::to_string(denominator.degree()));
    }
}

namespace {

void check_output_row(const LtiSystem& sys, const Matrix& c, const char* context) {
    if (c.rows() != 1 || c.cols() != sys.order()) {
        throw DimensionError(std::string(context) + ": C is " + std::to_string(c.rows()) + "x" +
                             std::to_string(c.cols()) + ", expected 1x" +
                             std::to_string(sys.order()));
    }
}

} // namespace

std::size_t relative_degree(const LtiSystem& sys, const Matrix& c, double tol_factor) {
    check_output_row(sys, c, "relative_degree");
    const std::size_t n = sys.order();
    const double norm_a = sys.A.frobenius_norm();
    const double norm_b = sys.B.frobenius_norm();
    const double norm_c = c.frobenius_norm();

    Matrix row = c; // C A^{i-1}
    double scale = norm_c * norm_b;
    for (std::size_t i = 1; i <= n; ++i) {
        const double marker = (row * sys.B)(0, 0);
        if (std::abs(marker) > tol_factor * scale) return i;
        row = row * sys.A;
        scale *= norm_a;
    }
    throw NumericalError("relative_degree: C A^{i-1} B vanishes for all i <= n "
                         "(output decoupled from input)");
}

TransferFunction transfer_function(const LtiSystem& sys, const Matrix& c) {
    check_output_row(sys, c, "transfer_function");
    const std::size_t n = sys.order();
    const FaddeevLeVerrier fl = faddeev_leverrier(sys.A);

    // numerator coefficient of s^{n-1-k} is C N[k] B
    std::vector<double> num(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        num[n - 1 - k] = (c * fl.adjugate[k] * sys.B)(0, 0);
    }
    return TransferFunction(Polynomial(std::move(num)), fl.characteristic);
}

CanonicalForm to_controller_canonical(const LtiSystem& sys) {
    const std::size_t n = sys.order();
    const Polynomial chi = characteristic_polynomial(sys.A);

    Matrix a_hat(n, n);
    for (std::size_t i = 0; i + 1 < n; ++i) a_hat(i, i + 1) = 1.0;
    for (std::size_t j = 0; j < n; ++j) a_hat(n - 1, j) = -chi[j];
    Matrix b_hat(n, 1);
    b_hat(n - 1, 0) = 1.0;

    const Matrix p = controllability_matrix(sys.A, sys.B);
    const Matrix p_hat = controllability_matrix(a_hat, b_hat);

    // T = P Phat^{-1}  via  Phat^T T^T = P^T
    Matrix t;
    try {
        t = LuFactorization(p_hat).solve_transposed(p.transpose()).transpose();
        // Probe P as well so uncontrollable pairs fail here, not downstream.
        LuFactorization probe(p);
        (void)probe;
    } catch (const SingularMatrixError& e) {
        throw Error(std::string("to_controller_canonical: uncontrollable system (") + e.what() +
                    ")");
    }
    return CanonicalForm{LtiSystem(std::move(a_hat), std::move(b_hat)), std::move(t)};
}

NormalFormData normal_form(const LtiSystem& sys, const Matrix& c) {
    check_output_row(sys, c, "normal_form");
    const std::size_t n = sys.order();
    const std::size_t r = relative_degree(sys, c);

    // Rows C, CA, ..., CA^{r-1}
    std::vector<Matrix> c_rows;
    c_rows.reserve(r);
    c_rows.push_back(c);
    for (std::size_t i = 1; i < r; ++i) c_rows.push_back(c_rows.back() * sys.A);

    NormalFormData out;
    out.relative_degree = r;

    if (r < n) {
        // Null space of [B^T; C; CA; ...; CA^{r-2}]: annihilates B and is
        // orthogonal to the first r-1 output rows, which makes the stacked T
        // provably invertible.
        Matrix s(r, n);
        s.set_block(0, 0, sys.B.transpose());
        for (std::size_t i = 0; i + 1 < r; ++i) s.set_block(i + 1, 0, c_rows[i]);
        out.B_perp = null_space_basis(s);
    } else {
        out.B_perp = Matrix(0, n);
    }

    Matrix t(n, n);
    t.set_block(0, 0, out.B_perp);
    for (std::size_t i = 0; i < r; ++i) t.set_block(n - r + i, 0, c_rows[i]);

    LuFactorization lu(t);
    const double cond = lu.condition_estimate();
    if (!(cond < 1e8)) {
        throw NumericalError("normal_form: coordinate change is ill-conditioned (estimate " +
                             std::to_string(cond) + ")");
    }

    // Transformed dynamics Abar = T A T^{-1}; its first n-r rows are [A0 B0].
    const Matrix ta = t * sys.A;
    const Matrix abar = lu.solve_transposed(ta.transpose()).transpose();
    out.A0 = abar.block(0, 0, n - r, n - r);
    out.B0 = abar.block(0, n - r, n - r, r);
    out.T = std::move(t);
    return out;
}

LtiSystem augment_with_integrators(const LtiSystem& sys, std::size_t k) {
    if (k < 1) throw Error("augment_with_integrators: k must be >= 1");
    const std::size_t n = sys.order();
    Matrix a(n + k, n + k);
    a.set_block(0, 0, sys.A);
    a.set_block(0, n, sys.B);                      // z1 feeds the plant input
    for (std::size_t i = 0; i + 1 < k; ++i) a(n + i, n + i + 1) = 1.0;
    Matrix b(n + k, 1);
    b(n + k - 1, 0) = 1.0;
    return LtiSystem(std::move(a), std::move(b));
}

} // namespace hosm
