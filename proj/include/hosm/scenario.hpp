#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "hosm/accuracy.hpp"
#include "hosm/controllers.hpp"
#include "hosm/design.hpp"
#include "hosm/simulate.hpp"

namespace hosm {

struct SweepSpec {
    SweepParameter parameter = SweepParameter::sampling_period;
    std::vector<double> grid;
};

/// One experiment described as data: the plant, the requested sliding
/// dynamics (gamma coefficients or desired zeros), the control law, the
/// simulation setup, and an optional parameter sweep.
struct Scenario {
    LtiSystem system;
    Polynomial gamma;                 // normalized: zeros are expanded on load
    bool gamma_given_as_zeros = false;
    std::optional<Matrix> explicit_c; // optional "C" row, used by verify
    ControllerSpec controller;
    SimConfig simulation;
    std::optional<SweepSpec> sweep;
};

/// Parses and validates a scenario JSON document. All cross-references are
/// checked before any computation; violations throw ScenarioError with the
/// offending field path in the message.
Scenario load_scenario(const std::filesystem::path& file);
Scenario parse_scenario(const std::string& json_text);

} // namespace hosm
