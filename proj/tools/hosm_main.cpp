#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "hosm/accuracy.hpp"
#include "hosm/design.hpp"
#include "hosm/format.hpp"
#include "hosm/scenario.hpp"
#include "hosm/simulate.hpp"

namespace {

namespace fs = std::filesystem;
using namespace hosm;

std::string poly_string(const Polynomial& p, int digits) {
    std::string out = "[";
    for (std::size_t k = 0; k < p.coefficients().size(); ++k) {
        if (k > 0) out += ", ";
        out += format_double(p[k], digits);
    }
    out += "] (ascending)";
    return out;
}

std::string row_string(const Matrix& row, int digits) {
    std::string out = "[";
    for (std::size_t j = 0; j < row.cols(); ++j) {
        if (j > 0) out += ", ";
        out += format_double(row(0, j), digits);
    }
    out += "]";
    return out;
}

std::string complex_string(const std::complex<double>& z, int digits) {
    if (z.imag() == 0.0) return format_double(z.real(), digits);
    return format_double(z.real(), digits) + (z.imag() < 0 ? " - " : " + ") +
           format_double(std::abs(z.imag()), digits) + "i";
}

SlidingDesign design_from(const Scenario& scenario) {
    return design_sliding_variable(scenario.system, scenario.gamma);
}

fs::path output_path(const fs::path& out_dir, const fs::path& scenario_file,
                     const std::string& suffix) {
    return out_dir / (scenario_file.stem().string() + suffix);
}

int cmd_design(const fs::path& file, int digits) {
    const Scenario scenario = load_scenario(file);
    const SlidingDesign design = design_from(scenario);

    std::cout << "sliding variable      C = " << row_string(design.C, digits) << "\n";
    std::cout << "gamma                 " << poly_string(design.gamma, digits) << "\n";
    std::cout << "relative degree       " << design.realized_relative_degree << " (target "
              << design.target_relative_degree << ")\n";
    if (design.zeros.empty()) {
        std::cout << "sliding eigenvalues   none (r = n, no sliding dynamics)\n";
    } else {
        std::cout << "sliding eigenvalues   ";
        for (std::size_t k = 0; k < design.zeros.size(); ++k) {
            if (k > 0) std::cout << ", ";
            std::cout << complex_string(design.zeros[k], digits);
        }
        std::cout << "\n";
    }
    std::cout << "cond(P) estimate      "
              << format_double(design.controllability_condition, digits) << "\n";
    return 0;
}

int cmd_verify(const fs::path& file, int digits) {
    const Scenario scenario = load_scenario(file);
    Matrix c = scenario.explicit_c ? *scenario.explicit_c : design_from(scenario).C;

    const DesignReport report = verify_design(scenario.system, c, scenario.gamma);
    std::cout << "C                     " << row_string(c, digits)
              << (scenario.explicit_c ? " (from scenario)" : " (designed)") << "\n";
    if (report.has_relative_degree) {
        std::cout << "relative degree       " << report.realized_relative_degree << "\n";
    } else {
        std::cout << "relative degree       undefined (output decoupled from input)\n";
    }
    std::cout << "numerator             " << poly_string(report.realized_numerator, digits)
              << "\n";
    std::cout << "denominator           " << poly_string(report.denominator, digits) << "\n";
    std::cout << "gamma mismatch        " << format_double(report.gamma_mismatch, digits)
              << " (relative)\n";
    if (report.zeros.empty()) {
        std::cout << "zeros                 none (no sliding dynamics)\n";
        std::cout << "minimum phase         yes (vacuously)\n";
    } else {
        std::cout << "zeros                 ";
        for (std::size_t k = 0; k < report.zeros.size(); ++k) {
            if (k > 0) std::cout << ", ";
            std::cout << complex_string(report.zeros[k], digits);
        }
        std::cout << "\n";
        std::cout << "max Re(zero)          " << format_double(report.max_zero_real_part, digits)
                  << "\n";
        std::cout << "minimum phase         " << (report.minimum_phase ? "yes" : "NO") << "\n";
    }
    return 0;
}

int cmd_simulate(const fs::path& file, const fs::path& out_dir, int digits) {
    const Scenario scenario = load_scenario(file);
    const SlidingDesign design = design_from(scenario);
    const Trajectory traj =
        simulate(scenario.system, design.C, scenario.controller, scenario.simulation);

    const fs::path csv = output_path(out_dir, file, "_trajectory.csv");
    std::ofstream os(csv, std::ios::binary);
    if (!os) throw Error("simulate: cannot write '" + csv.string() + "'");
    write_trajectory_csv(traj, os);

    std::cout << "trajectory            " << csv.string() << " (" << traj.times.size()
              << " samples)\n";
    double xnorm = 0.0;
    for (double v : traj.states.back()) xnorm += v * v;
    std::cout << "final ||x||           " << format_double(std::sqrt(xnorm), digits) << "\n";
    for (std::size_t i = 0; i < traj.sigma_derivs.front().size(); ++i) {
        std::cout << "tail max |sigma^(" << i << ")|  "
                  << format_double(steady_state_error(traj, i), digits) << "\n";
    }
    return 0;
}

int cmd_sweep(const fs::path& file, const fs::path& out_dir, int digits, bool self_test) {
    const Scenario scenario = load_scenario(file);

    if (self_test) {
        // Exercise the fitting machinery on an exact power law in place of
        // simulation: error = 3.7 * g^2 must come back with slope 2.
        std::vector<double> grid =
            scenario.sweep ? scenario.sweep->grid
                           : std::vector<double>{1e-4, 2e-4, 5e-4, 1e-3, 2e-3, 5e-3, 1e-2};
        std::vector<std::pair<double, std::vector<double>>> points;
        for (double g : grid) points.emplace_back(g, std::vector<double>{3.7 * g * g});
        const auto fits = fit_error_curves(std::move(points));
        const double slope_error = std::abs(fits[0].slope - 2.0);
        std::cout << "self-test slope       " << format_double(fits[0].slope, digits)
                  << " (expected 2)\n";
        std::cout << "self-test             " << (slope_error < 1e-9 ? "PASS" : "FAIL") << "\n";
        return slope_error < 1e-9 ? 0 : 2;
    }

    if (!scenario.sweep) {
        throw ScenarioError("sweep: scenario has no 'sweep' section");
    }
    const SlidingDesign design = design_from(scenario);
    const auto fits = sweep_and_fit(scenario.system, design.C, scenario.controller,
                                    scenario.simulation, scenario.sweep->parameter,
                                    scenario.sweep->grid);

    const fs::path csv = output_path(out_dir, file, "_sweep.csv");
    std::ofstream os(csv, std::ios::binary);
    if (!os) throw Error("sweep: cannot write '" + csv.string() + "'");
    write_sweep_csv(fits, os);

    std::cout << "sweep                 " << csv.string() << "\n";
    for (const auto& fit : fits) {
        std::cout << "sigma^(" << fit.derivative_order << ")  slope "
                  << format_double(fit.slope, digits) << "  intercept "
                  << format_double(fit.intercept, digits) << "  residual "
                  << format_double(fit.residual, digits);
        if (!fit.clamped_points.empty()) {
            std::cout << "  [" << fit.clamped_points.size() << " zero-error points clamped]";
        }
        std::cout << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sliding-variable design and closed-loop validation for single-input "
                 "LTI systems"};
    app.require_subcommand(1);

    std::string scenario_file;
    std::string out_dir = ".";
    int digits = 17;
    bool self_test = false;

    auto add_common = [&](CLI::App* cmd, bool with_out) {
        cmd->add_option("scenario", scenario_file, "Scenario JSON file")->required();
        cmd->add_option("--digits", digits, "Significant digits for printed numbers")
            ->check(CLI::Range(1, 17));
        if (with_out) cmd->add_option("--out", out_dir, "Output directory for CSV files");
    };

    CLI::App* design = app.add_subcommand("design", "Synthesize the sliding variable");
    add_common(design, false);
    CLI::App* verify = app.add_subcommand("verify", "Check a design: transfer function, "
                                                    "zeros, minimum phase");
    add_common(verify, false);
    CLI::App* simulate = app.add_subcommand("simulate", "Run the closed loop, write a "
                                                        "trajectory CSV");
    add_common(simulate, true);
    CLI::App* sweep = app.add_subcommand("sweep", "Sweep tau or the actuator constant and "
                                                  "fit error orders");
    add_common(sweep, true);
    sweep->add_flag("--self-test", self_test, "Fit a synthetic power law instead of simulating");

    CLI11_PARSE(app, argc, argv);

    try {
        if (design->parsed()) return cmd_design(scenario_file, digits);
        if (verify->parsed()) return cmd_verify(scenario_file, digits);
        if (simulate->parsed()) return cmd_simulate(scenario_file, out_dir, digits);
        if (sweep->parsed()) return cmd_sweep(scenario_file, out_dir, digits, self_test);
    } catch (const ScenarioError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
