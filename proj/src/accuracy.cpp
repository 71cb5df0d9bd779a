#include "hosm/accuracy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hosm/format.hpp"

namespace hosm {

LineFit least_squares_line(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) {
        throw DimensionError("least_squares_line: " + std::to_string(xs.size()) + " xs vs " +
                             std::to_string(ys.size()) + " ys");
    }
    const std::size_t n = xs.size();
    if (n < 2) throw Error("least_squares_line: need at least 2 points");

    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        mean_x += xs[k];
        mean_y += ys[k];
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double dx = xs[k] - mean_x;
        sxx += dx * dx;
        sxy += dx * (ys[k] - mean_y);
    }
    if (sxx == 0.0) throw Error("least_squares_line: all xs equal (degenerate fit)");

    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = mean_y - fit.slope * mean_x;
    double ss = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double d = ys[k] - (fit.intercept + fit.slope * xs[k]);
        ss += d * d;
    }
    fit.residual = std::sqrt(ss / static_cast<double>(n));
    return fit;
}

std::vector<AccuracyFit> fit_error_curves(
    std::vector<std::pair<double, std::vector<double>>> points) {
    if (points.size() < 3) {
        throw Error("fit_error_curves: need at least 3 grid points, got " +
                    std::to_string(points.size()));
    }
    std::sort(points.begin(), points.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    const std::size_t orders = points.front().second.size();
    for (const auto& [param, errors] : points) {
        if (!(param > 0.0)) {
            throw Error("fit_error_curves: parameter values must be positive, got " +
                        format_double(param));
        }
        if (errors.size() != orders) {
            throw Error("fit_error_curves: inconsistent number of error series");
        }
    }

    std::vector<AccuracyFit> fits;
    fits.reserve(orders);
    std::vector<double> log_param(points.size()), log_err(points.size());
    for (std::size_t k = 0; k < points.size(); ++k) log_param[k] = std::log(points[k].first);

    for (std::size_t i = 0; i < orders; ++i) {
        AccuracyFit fit;
        fit.derivative_order = i;
        for (std::size_t k = 0; k < points.size(); ++k) {
            double err = points[k].second[i];
            fit.points.emplace_back(points[k].first, err);
            if (err == 0.0) {
                // Exact zero (ideal sliding in floating point): clamp before
                // the log and flag the point rather than dropping it silently.
                err = 1e-300;
                fit.clamped_points.push_back(k);
            }
            log_err[k] = std::log(err);
        }
        const LineFit line = least_squares_line(log_param, log_err);
        fit.slope = line.slope;
        fit.intercept = line.intercept;
        fit.residual = line.residual;
        fits.push_back(std::move(fit));
    }
    return fits;
}

std::vector<AccuracyFit> sweep_and_fit(const LtiSystem& sys, const Matrix& c,
                                       const ControllerSpec& spec, const SimConfig& base_config,
                                       SweepParameter parameter, std::vector<double> grid) {
    if (grid.size() < 3) {
        throw Error("sweep_and_fit: grid needs at least 3 points, got " +
                    std::to_string(grid.size()));
    }
    for (double g : grid) {
        if (!(g > 0.0)) {
            throw Error("sweep_and_fit: grid values must be positive, got " + format_double(g));
        }
    }
    std::sort(grid.begin(), grid.end());
    base_config.validate(sys.order());

    const std::size_t r = static_cast<std::size_t>(spec.order);
    const long long substeps = std::llround(base_config.sampling_period / base_config.step);

    std::vector<std::pair<double, std::vector<double>>> points;
    points.reserve(grid.size());
    for (double g : grid) {
        SimConfig config = base_config;
        config.sampling_period = g;
        config.step = g / static_cast<double>(substeps);
        if (parameter == SweepParameter::actuator_constant) {
            // The actuator experiment sweeps one knob: the swept constant is
            // both the hold period and the lag time constant.
            config.actuator_lag = g;
        }
        try {
            const Trajectory traj = simulate(sys, c, spec, config);
            std::vector<double> errors(r);
            for (std::size_t i = 0; i < r; ++i) errors[i] = steady_state_error(traj, i);
            points.emplace_back(g, std::move(errors));
        } catch (const Error& e) {
            throw NumericalError("sweep_and_fit: at parameter " + format_double(g) + ": " +
                                 e.what());
        }
    }
    return fit_error_curves(std::move(points));
}

void write_sweep_csv(const std::vector<AccuracyFit>& fits, std::ostream& os) {
    if (fits.empty()) throw Error("write_sweep_csv: no fits");

    os << "parameter";
    for (const auto& fit : fits) os << ",error_i" << fit.derivative_order;
    os << "\n";
    for (std::size_t k = 0; k < fits.front().points.size(); ++k) {
        os << format_double(fits.front().points[k].first);
        for (const auto& fit : fits) os << "," << format_double(fit.points[k].second);
        os << "\n";
    }
    os << "i,slope,intercept,residual\n";
    for (const auto& fit : fits) {
        os << fit.derivative_order << "," << format_double(fit.slope) << ","
           << format_double(fit.intercept) << "," << format_double(fit.residual) << "\n";
    }
}

} // namespace hosm
