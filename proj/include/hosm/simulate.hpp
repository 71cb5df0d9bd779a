#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <vector>

#include "hosm/controllers.hpp"
#include "hosm/lti.hpp"

namespace hosm {

/// Matched sinusoidal perturbation w(t) = amplitude * sin(frequency * t).
struct Perturbation {
    double amplitude = 0.0;
    double frequency = 0.0;
};

/// Closed-loop simulation setup: sampled-and-held control with period tau,
/// fixed RK4 step h (h must divide tau, with tau/h >= 10), optional
/// first-order actuator lag mu*vdot = -v + u between the hold and the plant.
struct SimConfig {
    double sampling_period = 1e-3; // tau, seconds
    double step = 1e-4;            // h, seconds
    double t_end = 10.0;           // horizon, seconds
    std::vector<double> x0;
    Perturbation perturbation;
    std::optional<double> actuator_lag; // mu, seconds
    double transient_fraction = 0.5;    // head fraction discarded by error measurement

    void validate(std::size_t state_dimension) const;
};

/// Closed-loop signals recorded once per sampling instant. controls[i] is the
/// value computed from the exact state at t = i*tau and held over the
/// following interval (the last entry is the value that would be applied
/// next). All series have equal length.
struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> states;       // plant state x
    std::vector<double> controls;                  // held values
    std::vector<std::vector<double>> sigma_derivs; // [sigma, ..., sigma^{(r-1)}] per sample
    std::vector<double> perturbations;             // w(t) at the sampling instants
    double transient_fraction = 0.5;
};

/// Simulates xdot = A x + B(u_applied + w) under zero-order-hold control.
/// u is recomputed from the exact state at every sampling instant; w is
/// evaluated continuously at the RK4 stage times. With actuator lag the held
/// value feeds mu*vdot = -v + u and v enters the plant (v(0) = 0); the step
/// is tightened to min(h, mu/10). Deterministic: identical inputs produce
/// bit-identical outputs.
Trajectory simulate(const LtiSystem& sys, const Matrix& c, const ControllerSpec& spec,
                    const SimConfig& config);

/// Same integration loop with an arbitrary sampled control law; building
/// block for simulate and for oracle tests. sigma_rows may be empty.
using ControlFn = std::function<double(std::span<const double>)>;
Trajectory simulate_sampled(const LtiSystem& sys, const SimConfig& config,
                            const ControlFn& control,
                            const std::vector<std::vector<double>>& sigma_rows = {});

/// max |sigma^{(i)}| over the retained tail t >= transient_fraction * t_end
/// (the limsup of the periodic steady state these scenarios reach).
double steady_state_error(const Trajectory& traj, std::size_t derivative_order);

/// CSV export: header t,x1,...,xn,u,w,sigma0,...,sigma{r-1}; one row per
/// sampling instant; 17 significant digits; LF line endings.
void write_trajectory_csv(const Trajectory& traj, std::ostream& os);

} // namespace hosm
