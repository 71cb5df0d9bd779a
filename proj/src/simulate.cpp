#include "hosm/simulate.hpp"

#include <cmath>
#include <string>

#include "hosm/format.hpp"

namespace hosm {

void SimConfig::validate(std::size_t state_dimension) const {
    if (!(sampling_period > 0.0)) {
        throw Error("SimConfig: sampling_period must be > 0, got " +
                    format_double(sampling_period));
    }
    if (!(step > 0.0)) throw Error("SimConfig: step must be > 0");
    if (!(step <= sampling_period / 10.0 + 1e-15 * sampling_period)) {
        throw Error("SimConfig: step " + format_double(step) +
                    " must satisfy h <= tau/10 with tau = " + format_double(sampling_period));
    }
    const double ratio = sampling_period / step;
    const long long substeps = std::llround(ratio);
    if (substeps < 10 || std::abs(static_cast<double>(substeps) * step - sampling_period) >
                             1e-9 * sampling_period) {
        throw Error("SimConfig: step " + format_double(step) +
                    " does not divide sampling_period " + format_double(sampling_period) +
                    " (sampling instants must be step boundaries)");
    }
    if (!(t_end >= 100.0 * sampling_period)) {
        throw Error("SimConfig: t_end " + format_double(t_end) + " must be >= 100*tau = " +
                    format_double(100.0 * sampling_period));
    }
    if (!(transient_fraction > 0.0 && transient_fraction < 0.9)) {
        throw Error("SimConfig: transient_fraction " + format_double(transient_fraction) +
                    " must lie in (0, 0.9)");
    }
    if (x0.size() != state_dimension) {
        throw DimensionError("SimConfig: x0 has " + std::to_string(x0.size()) +
                             " entries, expected " + std::to_string(state_dimension));
    }
    for (double v : x0) {
        if (!std::isfinite(v)) throw Error("SimConfig: non-finite x0 entry");
    }
    if (!std::isfinite(perturbation.amplitude) || !std::isfinite(perturbation.frequency)) {
        throw Error("SimConfig: non-finite perturbation parameters");
    }
    if (actuator_lag && !(*actuator_lag > 0.0)) {
        throw Error("SimConfig: actuator time constant must be > 0, got " +
                    format_double(*actuator_lag));
    }
}

namespace {

/// One closed-loop integration state: plant x, optional actuator state v
/// appended, RK4 scratch buffers reused across steps.
class LoopIntegrator {
public:
    LoopIntegrator(const LtiSystem& sys, const SimConfig& config)
        : n_(sys.order()),
          dim_(n_ + (config.actuator_lag ? 1 : 0)),
          a_(sys.A.entries().data()),
          b_(sys.B.entries().data()),
          amplitude_(config.perturbation.amplitude),
          frequency_(config.perturbation.frequency),
          mu_(config.actuator_lag.value_or(0.0)),
          has_lag_(config.actuator_lag.has_value()),
          y_(dim_, 0.0),
          k1_(dim_), k2_(dim_), k3_(dim_), k4_(dim_), tmp_(dim_) {
        for (std::size_t i = 0; i < n_; ++i) y_[i] = config.x0[i];
    }

    std::span<const double> plant_state() const { return {y_.data(), n_}; }

    double perturbation_at(double t) const { return amplitude_ * std::sin(frequency_ * t); }

    void step(double t, double h, double u_held) {
        rhs(t, y_.data(), u_held, k1_.data());
        axpy(0.5 * h, k1_);
        rhs(t + 0.5 * h, tmp_.data(), u_held, k2_.data());
        axpy(0.5 * h, k2_);
        rhs(t + 0.5 * h, tmp_.data(), u_held, k3_.data());
        axpy(h, k3_);
        rhs(t + h, tmp_.data(), u_held, k4_.data());
        const double w = h / 6.0;
        for (std::size_t i = 0; i < dim_; ++i) {
            y_[i] += w * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
        }
    }

private:
    void rhs(double t, const double* y, double u_held, double* dy) const {
        const double w = amplitude_ * std::sin(frequency_ * t);
        const double input = (has_lag_ ? y[n_] : u_held) + w;
        for (std::size_t i = 0; i < n_; ++i) {
            const double* row = a_ + i * n_;
            double s = b_[i] * input;
            for (std::size_t j = 0; j < n_; ++j) s += row[j] * y[j];
            dy[i] = s;
        }
        if (has_lag_) dy[n_] = (u_held - y[n_]) / mu_;
    }

    void axpy(double alpha, const std::vector<double>& k) {
        for (std::size_t i = 0; i < dim_; ++i) tmp_[i] = y_[i] + alpha * k[i];
    }

    std::size_t n_;
    std::size_t dim_;
    const double* a_;
    const double* b_;
    double amplitude_, frequency_, mu_;
    bool has_lag_;
    std::vector<double> y_, k1_, k2_, k3_, k4_, tmp_;
};

} // namespace

Trajectory simulate_sampled(const LtiSystem& sys, const SimConfig& config,
                            const ControlFn& control,
                            const std::vector<std::vector<double>>& sigma_rows) {
    config.validate(sys.order());

    const double tau = config.sampling_period;
    long long substeps = std::llround(tau / config.step);
    if (config.actuator_lag) {
        // Resolve the lag: effective step min(h, mu/10), keeping the sampling
        // instants on step boundaries.
        const double h_cap = *config.actuator_lag / 10.0;
        if (tau / static_cast<double>(substeps) > h_cap) {
            substeps = static_cast<long long>(std::ceil(tau / h_cap - 1e-9));
        }
    }
    const double h = tau / static_cast<double>(substeps);
    const long long holds = static_cast<long long>(std::floor(config.t_end / tau + 1e-9));

    LoopIntegrator loop(sys, config);

    Trajectory traj;
    traj.transient_fraction = config.transient_fraction;
    const std::size_t samples = static_cast<std::size_t>(holds) + 1;
    traj.times.reserve(samples);
    traj.states.reserve(samples);
    traj.controls.reserve(samples);
    traj.sigma_derivs.reserve(samples);
    traj.perturbations.reserve(samples);

    std::vector<double> sigma(sigma_rows.size());
    auto record = [&](double t, double u) {
        const auto x = loop.plant_state();
        traj.times.push_back(t);
        traj.states.emplace_back(x.begin(), x.end());
        traj.controls.push_back(u);
        for (std::size_t i = 0; i < sigma_rows.size(); ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < x.size(); ++j) s += sigma_rows[i][j] * x[j];
            sigma[i] = s;
        }
        traj.sigma_derivs.push_back(sigma);
        traj.perturbations.push_back(loop.perturbation_at(t));
    };

    for (long long i = 0; i < holds; ++i) {
        const double t_i = static_cast<double>(i) * tau;
        const double u = control(loop.plant_state());
        if (!std::isfinite(u)) {
            throw NumericalError("simulate: control blew up at t = " + format_double(t_i));
        }
        record(t_i, u);
        for (long long s = 0; s < substeps; ++s) {
            loop.step(t_i + static_cast<double>(s) * h, h, u);
        }
    }
    const double t_final = static_cast<double>(holds) * tau;
    record(t_final, control(loop.plant_state()));
    return traj;
}

Trajectory simulate(const LtiSystem& sys, const Matrix& c, const ControllerSpec& spec,
                    const SimConfig& config) {
    const std::size_t r = relative_degree(sys, c);
    if (r != static_cast<std::size_t>(spec.order)) {
        throw Error("simulate: controller order " + std::to_string(spec.order) +
                    " does not match relative degree " + std::to_string(r));
    }
    SlidingController controller(sys, c, spec);

    std::vector<std::vector<double>> sigma_rows;
    sigma_rows.reserve(r);
    Matrix row = c;
    for (std::size_t i = 0; i < r; ++i) {
        sigma_rows.emplace_back(row.entries().begin(), row.entries().end());
        if (i + 1 < r) row = row * sys.A;
    }

    return simulate_sampled(
        sys, config, [&controller](std::span<const double> x) { return controller.control(x); },
        sigma_rows);
}

double steady_state_error(const Trajectory& traj, std::size_t derivative_order) {
    if (traj.times.empty()) throw Error("steady_state_error: empty trajectory");
    if (traj.sigma_derivs.front().size() <= derivative_order) {
        throw Error("steady_state_error: derivative order " + std::to_string(derivative_order) +
                    " not recorded (r = " + std::to_string(traj.sigma_derivs.front().size()) +
                    ")");
    }
    const double t_cut = traj.transient_fraction * traj.times.back();
    double worst = -1.0;
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        if (traj.times[k] < t_cut) continue;
        worst = std::max(worst, std::abs(traj.sigma_derivs[k][derivative_order]));
    }
    if (worst < 0.0) throw Error("steady_state_error: no samples after the transient cut");
    return worst;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& os) {
    const std::size_t n = traj.states.empty() ? 0 : traj.states.front().size();
    const std::size_t r = traj.sigma_derivs.empty() ? 0 : traj.sigma_derivs.front().size();

    os << "t";
    for (std::size_t j = 0; j < n; ++j) os << ",x" << (j + 1);
    os << ",u,w";
    for (std::size_t i = 0; i < r; ++i) os << ",sigma" << i;
    os << "\n";

    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        os << format_double(traj.times[k]);
        for (std::size_t j = 0; j < n; ++j) os << "," << format_double(traj.states[k][j]);
        os << "," << format_double(traj.controls[k]);
        os << "," << format_double(traj.perturbations[k]);
        for (std::size_t i = 0; i < r; ++i) os << "," << format_double(traj.sigma_derivs[k][i]);
        os << "\n";
    }
}

} // namespace hosm
