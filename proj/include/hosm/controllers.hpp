#pragma once

#include <span>
#include <vector>

#include "hosm/lti.hpp"

namespace hosm {

enum class ControlLaw { relay, twisting, quasi_continuous };

/// Which sliding-mode law closes the loop, with its gains.
///
/// Gains default to the values used throughout the worked examples: k0 = 10
/// for the relay and both quasi-continuous laws. Twisting gains must satisfy
/// k0 > k1 > 0; the defaults k0 = 5, k1 = 2 reject |w| <= 1 with margin.
struct ControllerSpec {
    ControlLaw law = ControlLaw::relay;
    int order = 1; // 1 relay, 2 twisting / quasi-continuous, 3 quasi-continuous
    double k0 = 10.0;
    double k1 = 2.0;               // twisting only
    bool drop_feedforward = false; // omit the C A^r x term, folding it into w

    void validate() const;
};

/// sign with sign(0) = 0.
inline double sign_of(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

/// Precomputed evaluator for one (system, C, law) triple. Rows C A^i and the
/// scalar C A^{r-1} B are fixed at construction; control() is then a handful
/// of dot products per call.
class SlidingController {
public:
    SlidingController(const LtiSystem& sys, const Matrix& c, ControllerSpec spec);

    double control(std::span<const double> x) const;

    /// [sigma, sigmadot, ..., sigma^{(r-1)}] = [Cx, CAx, ..., CA^{r-1}x].
    std::vector<double> sliding_coordinates(std::span<const double> x) const;
    void sliding_coordinates(std::span<const double> x, std::span<double> out) const;

    int order() const noexcept { return spec_.order; }
    const ControllerSpec& spec() const noexcept { return spec_; }

private:
    ControllerSpec spec_;
    std::vector<std::vector<double>> rows_; // C, CA, ..., CA^{order}
    double denom_ = 0.0;                    // C A^{r-1} B

    double row_dot(std::size_t i, std::span<const double> x) const;
};

/// u = -(CAx + k0 sign(Cx)) / (CB); requires relative degree 1.
double relay_control(const LtiSystem& sys, const Matrix& c, const ControllerSpec& spec,
                     std::span<const double> x);

/// u = -(CA^2 x + k0 sign(sigma) + k1 sign(sigmadot)) / (CAB); relative degree 2,
/// k0 > k1 > 0.
double twisting_control(const LtiSystem& sys, const Matrix& c, const ControllerSpec& spec,
                        std::span<const double> x);

/// u = -(CA^2 x + k0 (sigmadot + |sigma|^{1/2} sign sigma) /
///      (|sigmadot| + |sigma|^{1/2})) / (CAB); the quotient is 0 at the origin.
double quasi_continuous_2(const LtiSystem& sys, const Matrix& c, const ControllerSpec& spec,
                          std::span<const double> x);

/// Third-order quasi-continuous law; the nested ratio is 0 at the origin and
/// the inverse square root is evaluated jointly with its multiplier.
double quasi_continuous_3(const LtiSystem& sys, const Matrix& c, const ControllerSpec& spec,
                          std::span<const double> x);

} // namespace hosm
