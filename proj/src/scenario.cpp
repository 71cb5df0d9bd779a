#include "hosm/scenario.hpp"

#include <json.hpp>

#include <complex>
#include <fstream>

namespace hosm {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ScenarioError(path + ": " + what);
}

const json& require_field(const json& obj, const std::string& path, const char* key) {
    if (!obj.is_object()) fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(path + "." + key, "missing required field");
    return *it;
}

double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    return v.get<double>();
}

std::vector<double> as_number_list(const json& v, const std::string& path) {
    if (!v.is_array()) fail(path, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
        out.push_back(as_number(v[k], path + "[" + std::to_string(k) + "]"));
    }
    return out;
}

Matrix as_matrix(const json& v, const std::string& path) {
    if (!v.is_array() || v.empty()) fail(path, "expected a non-empty array of row arrays");
    const std::size_t rows = v.size();
    if (!v[0].is_array()) fail(path + "[0]", "expected a row array");
    const std::size_t cols = v[0].size();
    std::vector<double> entries;
    entries.reserve(rows * cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const std::string row_path = path + "[" + std::to_string(i) + "]";
        if (!v[i].is_array()) fail(row_path, "expected a row array");
        if (v[i].size() != cols) {
            fail(row_path, "row of length " + std::to_string(v[i].size()) + ", expected " +
                               std::to_string(cols));
        }
        for (std::size_t j = 0; j < cols; ++j) {
            entries.push_back(as_number(v[i][j], row_path + "[" + std::to_string(j) + "]"));
        }
    }
    return Matrix(rows, cols, std::move(entries));
}

/// B may be flat ([b1, ..., bn]) or nested ([[b1], ..., [bn]]).
Matrix as_column(const json& v, const std::string& path) {
    if (!v.is_array() || v.empty()) fail(path, "expected a non-empty array");
    if (v[0].is_number()) {
        return Matrix::column(as_number_list(v, path));
    }
    Matrix m = as_matrix(v, path);
    if (m.cols() != 1) fail(path, "expected a single column");
    return m;
}

std::vector<std::complex<double>> as_root_list(const json& v, const std::string& path) {
    if (!v.is_array() || v.empty()) fail(path, "expected a non-empty array of roots");
    std::vector<std::complex<double>> out;
    out.reserve(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
        const std::string p = path + "[" + std::to_string(k) + "]";
        if (v[k].is_number()) {
            out.emplace_back(v[k].get<double>(), 0.0);
        } else if (v[k].is_array() && v[k].size() == 2) {
            out.emplace_back(as_number(v[k][0], p + "[0]"), as_number(v[k][1], p + "[1]"));
        } else {
            fail(p, "expected a real number or an [re, im] pair");
        }
    }
    return out;
}

ControlLaw as_law(const json& v, const std::string& path) {
    if (!v.is_string()) fail(path, "expected a string");
    const std::string s = v.get<std::string>();
    if (s == "relay") return ControlLaw::relay;
    if (s == "twisting") return ControlLaw::twisting;
    if (s == "quasi_continuous") return ControlLaw::quasi_continuous;
    fail(path, "unknown law '" + s + "' (expected relay | twisting | quasi_continuous)");
}

} // namespace

Scenario parse_scenario(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ScenarioError(std::string("scenario: invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ScenarioError("scenario: top-level value must be an object");

    // system
    const json& jsystem = require_field(doc, "scenario", "system");
    Matrix a = as_matrix(require_field(jsystem, "system", "A"), "system.A");
    Matrix b = as_column(require_field(jsystem, "system", "B"), "system.B");
    if (a.rows() != a.cols()) fail("system.A", "must be square");
    if (b.rows() != a.rows()) {
        fail("system.B", "has " + std::to_string(b.rows()) + " rows, expected " +
                             std::to_string(a.rows()));
    }
    const std::size_t n = a.rows();

    // design
    const json& jdesign = require_field(doc, "scenario", "design");
    const bool has_gamma = jdesign.contains("gamma");
    const bool has_zeros = jdesign.contains("zeros");
    if (has_gamma == has_zeros) {
        fail("design", "exactly one of 'gamma' (ascending coefficients) or 'zeros' "
                       "must be present");
    }

    Polynomial gamma;
    if (has_gamma) {
        gamma = Polynomial(as_number_list(jdesign["gamma"], "design.gamma"));
        if (!gamma.is_monic()) fail("design.gamma", "must be monic");
    } else {
        try {
            gamma = poly_from_roots(as_root_list(jdesign["zeros"], "design.zeros"));
        } catch (const Error& e) {
            fail("design.zeros", e.what());
        }
    }
    if (gamma.degree() > n - 1) {
        fail("design", "gamma degree " + std::to_string(gamma.degree()) +
                           " exceeds n-1 = " + std::to_string(n - 1));
    }
    const std::size_t r = n - gamma.degree();

    std::optional<Matrix> explicit_c;
    if (jdesign.contains("C")) {
        std::vector<double> c = as_number_list(jdesign["C"], "design.C");
        if (c.size() != n) {
            fail("design.C",
                 "has " + std::to_string(c.size()) + " entries, expected " + std::to_string(n));
        }
        explicit_c = Matrix::row(c);
    }

    // controller
    const json& jctl = require_field(doc, "scenario", "controller");
    ControllerSpec spec;
    spec.law = as_law(require_field(jctl, "controller", "law"), "controller.law");
    if (jctl.contains("order")) {
        if (!jctl["order"].is_number_integer()) fail("controller.order", "expected an integer");
        spec.order = jctl["order"].get<int>();
    } else {
        spec.order = static_cast<int>(r);
    }
    if (jctl.contains("k0")) spec.k0 = as_number(jctl["k0"], "controller.k0");
    if (jctl.contains("k1")) spec.k1 = as_number(jctl["k1"], "controller.k1");
    if (jctl.contains("drop_feedforward")) {
        if (!jctl["drop_feedforward"].is_boolean()) {
            fail("controller.drop_feedforward", "expected a boolean");
        }
        spec.drop_feedforward = jctl["drop_feedforward"].get<bool>();
    }
    try {
        spec.validate();
    } catch (const Error& e) {
        fail("controller", e.what());
    }
    if (spec.order != static_cast<int>(r)) {
        fail("controller.order", "is " + std::to_string(spec.order) +
                                     " but the design has relative degree " + std::to_string(r));
    }

    // simulation
    const json& jsim = require_field(doc, "scenario", "simulation");
    SimConfig sim;
    sim.sampling_period = as_number(require_field(jsim, "simulation", "tau"), "simulation.tau");
    sim.step = jsim.contains("h") ? as_number(jsim["h"], "simulation.h")
                                  : sim.sampling_period / 10.0;
    sim.t_end = as_number(require_field(jsim, "simulation", "t_end"), "simulation.t_end");
    sim.x0 = as_number_list(require_field(jsim, "simulation", "x0"), "simulation.x0");
    if (jsim.contains("perturbation")) {
        const json& jw = jsim["perturbation"];
        sim.perturbation.amplitude =
            as_number(require_field(jw, "simulation.perturbation", "amplitude"),
                      "simulation.perturbation.amplitude");
        sim.perturbation.frequency =
            as_number(require_field(jw, "simulation.perturbation", "frequency"),
                      "simulation.perturbation.frequency");
    }
    if (jsim.contains("actuator")) {
        const json& ja = jsim["actuator"];
        const json& jt = require_field(ja, "simulation.actuator", "type");
        if (!jt.is_string()) fail("simulation.actuator.type", "expected a string");
        const std::string type = jt.get<std::string>();
        if (type == "lag") {
            sim.actuator_lag = as_number(require_field(ja, "simulation.actuator", "mu"),
                                         "simulation.actuator.mu");
        } else if (type != "none") {
            fail("simulation.actuator.type", "unknown type '" + type + "' (none | lag)");
        }
    }
    if (jsim.contains("transient_fraction")) {
        sim.transient_fraction =
            as_number(jsim["transient_fraction"], "simulation.transient_fraction");
    }
    try {
        sim.validate(n);
    } catch (const Error& e) {
        fail("simulation", e.what());
    }

    // sweep (optional)
    std::optional<SweepSpec> sweep;
    if (doc.contains("sweep")) {
        const json& jsweep = doc["sweep"];
        SweepSpec sw;
        const json& jp = require_field(jsweep, "sweep", "parameter");
        if (!jp.is_string()) fail("sweep.parameter", "expected a string");
        const std::string p = jp.get<std::string>();
        if (p == "sampling_period") {
            sw.parameter = SweepParameter::sampling_period;
        } else if (p == "actuator_constant") {
            sw.parameter = SweepParameter::actuator_constant;
        } else {
            fail("sweep.parameter",
                 "unknown parameter '" + p + "' (sampling_period | actuator_constant)");
        }
        sw.grid = as_number_list(require_field(jsweep, "sweep", "grid"), "sweep.grid");
        if (sw.grid.size() < 3) fail("sweep.grid", "needs at least 3 points");
        for (std::size_t k = 0; k < sw.grid.size(); ++k) {
            if (!(sw.grid[k] > 0.0)) {
                fail("sweep.grid[" + std::to_string(k) + "]", "must be positive");
            }
        }
        sweep = std::move(sw);
    }

    return Scenario{LtiSystem(std::move(a), std::move(b)),
                    std::move(gamma),
                    has_zeros,
                    std::move(explicit_c),
                    spec,
                    std::move(sim),
                    std::move(sweep)};
}

Scenario load_scenario(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ScenarioError("scenario: cannot open '" + file.string() + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_scenario(text);
}

} // namespace hosm
