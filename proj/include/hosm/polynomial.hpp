#pragma once

#include <complex>
#include <span>
#include <vector>

#include "hosm/errors.hpp"

namespace hosm {

/// Real-coefficient polynomial, coefficients stored in ascending degree order.
///
/// Trailing coefficients whose magnitude is below 1e-12 relative to the
/// largest coefficient are trimmed on construction, so user-entered exact
/// polynomials are never mangled. The identically-zero polynomial is stored
/// as the single coefficient {0}.
class Polynomial {
public:
    /// The zero polynomial.
    Polynomial();

    /// From ascending coefficients [p0, p1, ..., pd].
    explicit Polynomial(std::vector<double> ascending_coefficients);

    static Polynomial constant(double value);
    static Polynomial one() { return constant(1.0); }

    std::size_t degree() const noexcept { return coefficients_.size() - 1; }
    std::span<const double> coefficients() const noexcept { return coefficients_; }
    double operator[](std::size_t k) const { return coefficients_[k]; }
    double leading_coefficient() const { return coefficients_.back(); }

    bool is_zero() const noexcept;
    bool is_monic(double tol = 1e-9) const;

    double eval(double x) const;
    std::complex<double> eval(std::complex<double> x) const;

    double max_abs_coefficient() const;

    Polynomial operator+(const Polynomial& other) const;
    Polynomial operator-(const Polynomial& other) const;
    Polynomial operator*(const Polynomial& other) const;
    Polynomial operator*(double scalar) const;

    bool operator==(const Polynomial& other) const = default;

    /// Relative coefficient distance: ||a - b||_inf / max(||a||_inf, ||b||_inf),
    /// comparing coefficient vectors padded to a common degree. Zero for two
    /// zero polynomials.
    static double relative_distance(const Polynomial& a, const Polynomial& b);

private:
    std::vector<double> coefficients_;
    void trim();
};

/// Monic real polynomial with the given roots. The root multiset must be
/// closed under complex conjugation; conjugate pairs are expanded as real
/// quadratic factors so the result carries no imaginary residue at all.
Polynomial poly_from_roots(std::span<const std::complex<double>> roots);

/// Roots as eigenvalues of the companion matrix, sorted by real part then
/// imaginary part. Requires degree >= 1 and a nonzero polynomial.
std::vector<std::complex<double>> polynomial_roots(const Polynomial& p);

} // namespace hosm
