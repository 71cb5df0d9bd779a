#pragma once

#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "hosm/simulate.hpp"

namespace hosm {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0; // RMS of the y deviations
};

/// Ordinary least squares of ys on xs. Requires >= 2 points and at least two
/// distinct xs.
LineFit least_squares_line(std::span<const double> xs, std::span<const double> ys);

/// Log-log fit of steady-state sliding error against a swept parameter; slope
/// estimates the accuracy order r - i and intercept estimates log(mu_i).
struct AccuracyFit {
    std::size_t derivative_order = 0;
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;
    std::vector<std::pair<double, double>> points; // (parameter value, error)
    std::vector<std::size_t> clamped_points;       // indices where error was exactly 0
};

enum class SweepParameter { sampling_period, actuator_constant };

/// Fits log(error) vs log(parameter) per derivative order from already
/// collected (parameter, errors-per-order) pairs; points are sorted by
/// parameter first, zero errors are clamped to 1e-300 and flagged.
std::vector<AccuracyFit> fit_error_curves(
    std::vector<std::pair<double, std::vector<double>>> points);

/// Runs one simulation per grid value with the swept parameter substituted
/// into base_config, measures steady-state errors for every derivative order
/// i < r, and fits the log-log lines. Sampling-period sweeps set tau to the
/// grid value (keeping the tau/h ratio); actuator sweeps set both tau and the
/// first-order lag constant to the grid value, which is the single swept knob
/// of that experiment. Returned fits are sorted by derivative order.
std::vector<AccuracyFit> sweep_and_fit(const LtiSystem& sys, const Matrix& c,
                                       const ControllerSpec& spec, const SimConfig& base_config,
                                       SweepParameter parameter, std::vector<double> grid);

/// CSV export: rows parameter,error_i0,...,error_i{r-1}, then a summary block
/// i,slope,intercept,residual. 17 significant digits, LF line endings.
void write_sweep_csv(const std::vector<AccuracyFit>& fits, std::ostream& os);

} // namespace hosm
