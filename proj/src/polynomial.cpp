#include "hosm/polynomial.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

namespace hosm {

Polynomial::Polynomial() : coefficients_{0.0} {}

Polynomial::Polynomial(std::vector<double> ascending_coefficients)
    : coefficients_(std::move(ascending_coefficients)) {
    if (coefficients_.empty()) coefficients_.push_back(0.0);
    for (double c : coefficients_) {
        if (!std::isfinite(c)) throw Error("Polynomial: non-finite coefficient");
    }
    trim();
}

Polynomial Polynomial::constant(double value) { return Polynomial(std::vector<double>{value}); }

void Polynomial::trim() {
    const double scale = max_abs_coefficient();
    const double tol = 1e-12 * scale;
    while (coefficients_.size() > 1 && std::abs(coefficients_.back()) <= tol) {
        coefficients_.pop_back();
    }
}

bool Polynomial::is_zero() const noexcept {
    return coefficients_.size() == 1 && coefficients_[0] == 0.0;
}

bool Polynomial::is_monic(double tol) const {
    return std::abs(coefficients_.back() - 1.0) <= tol;
}

double Polynomial::eval(double x) const {
    double acc = 0.0;
    for (std::size_t k = coefficients_.size(); k-- > 0;) acc = acc * x + coefficients_[k];
    return acc;
}

std::complex<double> Polynomial::eval(std::complex<double> x) const {
    std::complex<double> acc = 0.0;
    for (std::size_t k = coefficients_.size(); k-- > 0;) acc = acc * x + coefficients_[k];
    return acc;
}

double Polynomial::max_abs_coefficient() const {
    double best = 0.0;
    for (double c : coefficients_) best = std::max(best, std::abs(c));
    return best;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
    std::vector<double> out(std::max(coefficients_.size(), other.coefficients_.size()), 0.0);
    for (std::size_t k = 0; k < coefficients_.size(); ++k) out[k] += coefficients_[k];
    for (std::size_t k = 0; k < other.coefficients_.size(); ++k) out[k] += other.coefficients_[k];
    return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
    std::vector<double> out(std::max(coefficients_.size(), other.coefficients_.size()), 0.0);
    for (std::size_t k = 0; k < coefficients_.size(); ++k) out[k] += coefficients_[k];
    for (std::size_t k = 0; k < other.coefficients_.size(); ++k) out[k] -= other.coefficients_[k];
    return Polynomial(std::move(out));
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
    if (is_zero() || other.is_zero()) return Polynomial();
    std::vector<double> out(coefficients_.size() + other.coefficients_.size() - 1, 0.0);
    for (std::size_t i = 0; i < coefficients_.size(); ++i)
        for (std::size_t j = 0; j < other.coefficients_.size(); ++j)
            out[i + j] += coefficients_[i] * other.coefficients_[j];
    return Polynomial(std::move(out));
}

Polynomial Polynomial::operator*(double scalar) const {
    std::vector<double> out(coefficients_.begin(), coefficients_.end());
    for (double& c : out) c *= scalar;
    return Polynomial(std::move(out));
}

double Polynomial::relative_distance(const Polynomial& a, const Polynomial& b) {
    const double scale = std::max(a.max_abs_coefficient(), b.max_abs_coefficient());
    if (scale == 0.0) return 0.0;
    const std::size_t len = std::max(a.coefficients_.size(), b.coefficients_.size());
    double worst = 0.0;
    for (std::size_t k = 0; k < len; ++k) {
        const double ca = k < a.coefficients_.size() ? a.coefficients_[k] : 0.0;
        const double cb = k < b.coefficients_.size() ? b.coefficients_[k] : 0.0;
        worst = std::max(worst, std::abs(ca - cb));
    }
    return worst / scale;
}

Polynomial poly_from_roots(std::span<const std::complex<double>> roots) {
    // Pair conjugates first so expansion stays in real arithmetic throughout.
    std::vector<std::complex<double>> pending(roots.begin(), roots.end());
    Polynomial result = Polynomial::one();

    while (!pending.empty()) {
        const std::complex<double> r = pending.back();
        pending.pop_back();
        const double imag_tol = 1e-10 * std::max(1.0, std::abs(r));
        if (std::abs(r.imag()) <= imag_tol) {
            result = result * Polynomial({-r.real(), 1.0});
            continue;
        }
        // Find the conjugate partner.
        auto partner = std::find_if(pending.begin(), pending.end(), [&](const auto& s) {
            return std::abs(s.real() - r.real()) <= imag_tol &&
                   std::abs(s.imag() + r.imag()) <= imag_tol;
        });
        if (partner == pending.end()) {
            throw Error("poly_from_roots: root " + std::to_string(r.real()) + "+" +
                        std::to_string(r.imag()) + "i has no conjugate partner");
        }
        pending.erase(partner);
        // (x - r)(x - conj r) = x^2 - 2 Re(r) x + |r|^2
        result = result * Polynomial({std::norm(r), -2.0 * r.real(), 1.0});
    }
    return result;
}

std::vector<std::complex<double>> polynomial_roots(const Polynomial& p) {
    if (p.is_zero()) throw Error("polynomial_roots: zero polynomial");
    if (p.degree() < 1) throw Error("polynomial_roots: degree must be >= 1");

    const std::size_t d = p.degree();
    const double lead = p.leading_coefficient();
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d),
                                                      static_cast<Eigen::Index>(d));
    for (std::size_t i = 1; i < d; ++i)
        companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    for (std::size_t i = 0; i < d; ++i)
        companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d - 1)) =
            -p[i] / lead;

    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("polynomial_roots: companion eigensolver did not converge");
    }

    std::vector<std::complex<double>> out(d);
    for (std::size_t i = 0; i < d; ++i) out[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

} // namespace hosm
