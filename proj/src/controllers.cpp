#include "hosm/controllers.hpp"

#include <cmath>
#include <string>

namespace hosm {

void ControllerSpec::validate() const {
    switch (law) {
        case ControlLaw::relay:
            if (order != 1) throw Error("ControllerSpec: relay law requires order 1");
            break;
        case ControlLaw::twisting:
            if (order != 2) throw Error("ControllerSpec: twisting law requires order 2");
            if (!(k1 > 0.0)) throw Error("ControllerSpec: twisting needs k1 > 0");
            if (!(k0 > k1)) throw Error("ControllerSpec: twisting needs k0 > k1");
            break;
        case ControlLaw::quasi_continuous:
            if (order != 2 && order != 3)
                throw Error("ControllerSpec: quasi-continuous law requires order 2 or 3");
            break;
    }
    if (!(k0 > 0.0)) throw Error("ControllerSpec: k0 must be > 0");
}

SlidingController::SlidingController(const LtiSystem& sys, const Matrix& c, ControllerSpec spec)
    : spec_(spec) {
    spec_.validate();
    if (c.rows() != 1 || c.cols() != sys.order()) {
        throw DimensionError("SlidingController: C is " + std::to_string(c.rows()) + "x" +
                             std::to_string(c.cols()) + ", expected 1x" +
                             std::to_string(sys.order()));
    }
    const std::size_t r = static_cast<std::size_t>(spec_.order);

    Matrix row = c;
    rows_.reserve(r + 1);
    for (std::size_t i = 0; i <= r; ++i) {
        rows_.emplace_back(row.entries().begin(), row.entries().end());
        if (i < r) row = row * sys.A;
    }

    // C A^{r-1} B, with the same scale-relative zero test as relative_degree.
    denom_ = 0.0;
    for (std::size_t j = 0; j < sys.order(); ++j) denom_ += rows_[r - 1][j] * sys.B(j, 0);
    const double scale = c.frobenius_norm() * sys.B.frobenius_norm() *
                         std::pow(sys.A.frobenius_norm(), static_cast<double>(r - 1));
    if (std::abs(denom_) <= 1e-9 * scale) {
        throw Error("SlidingController: C A^" + std::to_string(r - 1) +
                    " B is numerically zero; relative degree does not match controller order " +
                    std::to_string(spec_.order));
    }
}

double SlidingController::row_dot(std::size_t i, std::span<const double> x) const {
    const auto& row = rows_[i];
    double s = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) s += row[j] * x[j];
    return s;
}

std::vector<double> SlidingController::sliding_coordinates(std::span<const double> x) const {
    std::vector<double> out(static_cast<std::size_t>(spec_.order));
    sliding_coordinates(x, out);
    return out;
}

void SlidingController::sliding_coordinates(std::span<const double> x,
                                            std::span<double> out) const {
    for (std::size_t i = 0; i < static_cast<std::size_t>(spec_.order); ++i)
        out[i] = row_dot(i, x);
}

double SlidingController::control(std::span<const double> x) const {
    const std::size_t r = static_cast<std::size_t>(spec_.order);
    const double feedforward = spec_.drop_feedforward ? 0.0 : row_dot(r, x);

    double nonlinear = 0.0;
    switch (spec_.law) {
        case ControlLaw::relay: {
            nonlinear = spec_.k0 * sign_of(row_dot(0, x));
            break;
        }
        case ControlLaw::twisting: {
            nonlinear = spec_.k0 * sign_of(row_dot(0, x)) + spec_.k1 * sign_of(row_dot(1, x));
            break;
        }
        case ControlLaw::quasi_continuous: {
            const double sigma = row_dot(0, x);
            const double dsigma = row_dot(1, x);
            if (spec_.order == 2) {
                const double root = std::sqrt(std::abs(sigma));
                const double den = std::abs(dsigma) + root;
                nonlinear = den == 0.0
                                ? 0.0
                                : spec_.k0 * (dsigma + root * sign_of(sigma)) / den;
            } else {
                const double ddsigma = row_dot(2, x);
                const double s = std::abs(dsigma) + std::pow(std::abs(sigma), 2.0 / 3.0);
                // (|sigmadot| + |sigma|^{2/3})^{-1/2} times its multiplier,
                // evaluated jointly: both vanish together, so the product is 0.
                const double inner =
                    s == 0.0 ? 0.0
                             : 2.0 * (dsigma + std::pow(std::abs(sigma), 2.0 / 3.0) *
                                                   sign_of(sigma)) /
                                   std::sqrt(s);
                const double den = std::abs(ddsigma) + 2.0 * std::sqrt(s);
                nonlinear = den == 0.0 ? 0.0 : spec_.k0 * (ddsigma + inner) / den;
            }
            break;
        }
    }
    return -(feedforward + nonlinear) / denom_;
}

namespace {

double one_shot(const LtiSystem& sys, const Matrix& c, ControllerSpec spec, ControlLaw law,
                int order, std::span<const double> x) {
    spec.law = law;
    spec.order = order;
    return SlidingController(sys, c, spec).control(x);
}

} // namespace

double relay_control(const LtiSystem& sys, const Matrix& c, const ControllerSpec& spec,
                     std::span<const double> x) {
    return one_shot(sys, c, spec, ControlLaw::relay, 1, x);
}

double twisting_control(const LtiSystem& sys, const Matrix& c, const ControllerSpec& spec,
                        std::span<const double> x) {
    return one_shot(sys, c, spec, ControlLaw::twisting, 2, x);
}

double quasi_continuous_2(const LtiSystem& sys, const Matrix& c, const ControllerSpec& spec,
                          std::span<const double> x) {
    return one_shot(sys, c, spec, ControlLaw::quasi_continuous, 2, x);
}

double quasi_continuous_3(const LtiSystem& sys, const Matrix& c, const ControllerSpec& spec,
                          std::span<const double> x) {
    return one_shot(sys, c, spec, ControlLaw::quasi_continuous, 3, x);
}

} // namespace hosm
