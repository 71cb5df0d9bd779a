#pragma once

// Test-only fixtures and independent oracles. Everything here deliberately
// avoids the library's computation paths it is used to check: eigenvalues come
// from Eigen, the matrix exponential is a scaling-and-squaring Taylor sum, and
// random inputs use explicit seeded engines.

#include <Eigen/Dense>

#include <complex>
#include <random>
#include <vector>

#include "hosm/lti.hpp"
#include "hosm/matrix.hpp"
#include "hosm/polynomial.hpp"

namespace hosm::testing {

// Inverted pendulum on a cart, the running example system.
inline LtiSystem pendulum() {
    return LtiSystem(Matrix{{0, 1, 0, 0}, {0, 0, -1.56, 0}, {0, 0, 0, 1}, {0, 0, 46.87, 0}},
                     Matrix{{0}, {0.97}, {0}, {-3.98}});
}

// Integrator chain of length n (companion A with ones on the superdiagonal,
// B = e_n).
inline LtiSystem chain(std::size_t n) {
    Matrix a(n, n);
    for (std::size_t i = 0; i + 1 < n; ++i) a(i, i + 1) = 1.0;
    Matrix b(n, 1);
    b(n - 1, 0) = 1.0;
    return LtiSystem(std::move(a), std::move(b));
}

inline Eigen::MatrixXd to_eigen(const Matrix& m) {
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
    return out;
}

inline std::vector<std::complex<double>> eigenvalues_oracle(const Matrix& a) {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(to_eigen(a), false);
    std::vector<std::complex<double>> out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        out[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    return out;
}

// Characteristic polynomial as the expanded product of (lambda - lambda_i)
// over numerically computed eigenvalues; independent of Faddeev-LeVerrier.
inline Polynomial charpoly_oracle(const Matrix& a) {
    const auto lambdas = eigenvalues_oracle(a);
    std::vector<std::complex<double>> coeffs{1.0};
    for (const auto& lambda : lambdas) {
        std::vector<std::complex<double>> next(coeffs.size() + 1, 0.0);
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            next[k + 1] += coeffs[k];
            next[k] -= lambda * coeffs[k];
        }
        coeffs = std::move(next);
    }
    std::vector<double> real_coeffs(coeffs.size());
    for (std::size_t k = 0; k < coeffs.size(); ++k) real_coeffs[k] = coeffs[k].real();
    return Polynomial(std::move(real_coeffs));
}

// exp(A) by scaling and squaring with a Taylor tail; accurate to ~1e-14 for
// the moderate norms used in tests.
inline Matrix expm(const Matrix& a) {
    const std::size_t n = a.rows();
    int s = 0;
    double norm = a.frobenius_norm();
    while (norm > 0.5) {
        norm *= 0.5;
        ++s;
    }
    Matrix scaled = a * std::pow(0.5, s);
    Matrix term = Matrix::identity(n);
    Matrix sum = term;
    for (int k = 1; k <= 40; ++k) {
        term = term * scaled * (1.0 / k);
        sum += term;
        if (term.frobenius_norm() < 1e-20) break;
    }
    for (int k = 0; k < s; ++k) sum = sum * sum;
    return sum;
}

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                            double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    Matrix m(rows, cols);
    for (double& e : m.entries()) e = dist(rng);
    return m;
}

// Random controllable pair with a numerically trustworthy controllability
// matrix (condition estimate below cond_cap); resamples until found.
inline LtiSystem random_controllable(std::mt19937_64& rng, std::size_t n,
                                     double cond_cap = 1e7) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        Matrix a = random_matrix(rng, n, n);
        Matrix b = random_matrix(rng, n, 1);
        try {
            LuFactorization lu(controllability_matrix(a, b));
            if (lu.condition_estimate() <= cond_cap) return LtiSystem(std::move(a), std::move(b));
        } catch (const SingularMatrixError&) {
        }
    }
    throw std::runtime_error("random_controllable: no acceptable pair after 200 draws");
}

// Monic polynomial with distinct real roots drawn from [-10, -0.1].
inline Polynomial random_stable_monic(std::mt19937_64& rng, std::size_t degree) {
    std::uniform_real_distribution<double> dist(-10.0, -0.1);
    std::vector<std::complex<double>> roots;
    while (roots.size() < degree) {
        const double candidate = dist(rng);
        bool separated = true;
        for (const auto& r : roots) separated &= std::abs(r.real() - candidate) > 0.05;
        if (separated) roots.emplace_back(candidate, 0.0);
    }
    return poly_from_roots(roots);
}

// Well-conditioned random similarity transform (I + 0.5 R resampled until the
// condition estimate is small).
inline Matrix random_similarity(std::mt19937_64& rng, std::size_t n, double cond_cap = 100.0) {
    for (int attempt = 0; attempt < 100; ++attempt) {
        Matrix s = Matrix::identity(n) + 0.5 * random_matrix(rng, n, n);
        try {
            if (LuFactorization(s).condition_estimate() <= cond_cap) return s;
        } catch (const SingularMatrixError&) {
        }
    }
    throw std::runtime_error("random_similarity: no acceptable transform after 100 draws");
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
    return worst;
}

} // namespace hosm::testing
