#include "hosm/linalg.hpp"

#include <string>

namespace hosm {

Matrix controllability_matrix(const Matrix& a, const Matrix& b) {
    if (a.rows() != a.cols()) {
        throw DimensionError("controllability_matrix: A is " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + ", expected square");
    }
    if (b.rows() != a.rows() || b.cols() != 1) {
        throw DimensionError("controllability_matrix: B is " + std::to_string(b.rows()) + "x" +
                             std::to_string(b.cols()) + ", expected " + std::to_string(a.rows()) +
                             "x1");
    }
    const std::size_t n = a.rows();
    Matrix p(n, n);
    Matrix col = b;
    for (std::size_t k = 0; k < n; ++k) {
        p.set_block(0, k, col);
        if (k + 1 < n) col = a * col;
    }
    return p;
}

Matrix eval_matrix_polynomial(const Polynomial& p, const Matrix& a) {
    if (a.rows() != a.cols()) {
        throw DimensionError("eval_matrix_polynomial: A is " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + ", expected square");
    }
    const std::size_t n = a.rows();
    auto coeffs = p.coefficients();
    Matrix acc = coeffs.back() * Matrix::identity(n);
    for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
        acc = acc * a;
        for (std::size_t i = 0; i < n; ++i) acc(i, i) += coeffs[k];
    }
    return acc;
}

FaddeevLeVerrier faddeev_leverrier(const Matrix& a) {
    if (a.rows() != a.cols()) {
        throw DimensionError("characteristic_polynomial: A is " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + ", expected square");
    }
    const std::size_t n = a.rows();
    std::vector<double> coeffs(n + 1, 0.0);
    coeffs[n] = 1.0;

    FaddeevLeVerrier out;
    out.adjugate.reserve(n);

    Matrix nk = Matrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        out.adjugate.push_back(nk);
        const Matrix m = a * nk;
        double trace = 0.0;
        for (std::size_t i = 0; i < n; ++i) trace += m(i, i);
        const double c = -trace / static_cast<double>(k);
        coeffs[n - k] = c;
        nk = m;
        for (std::size_t i = 0; i < n; ++i) nk(i, i) += c;
    }
    // nk now equals A*N[n-1] + c0*I, which Cayley-Hamilton sends to zero;
    // it is not part of the adjugate sequence.

    out.characteristic = Polynomial(std::move(coeffs));
    return out;
}

Polynomial characteristic_polynomial(const Matrix& a) {
    return faddeev_leverrier(a).characteristic;
}

} // namespace hosm
