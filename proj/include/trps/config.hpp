#pragma once

#include <string>
#include <vector>

#include "trps/basis.hpp"
#include "trps/liouvillian.hpp"
#include "trps/system_params.hpp"

namespace trps {

// Grid controls. Zero means "derive automatically from the physics".
struct GridSpec {
    std::string energy_unit = "ueV";
    std::string time_unit = "ps";
    int nu_points = 601;
    double nu_span_factor = 3.0;
    int t_outputs = 121;
    double t_max_ps = 0.0;
    int fine_step_divisor = 4;
    double tau_step_ps = 0.0;
    double tau_future_ps = 50.0;

    void validate() const;
};

struct OutputSpec {
    bool trajectory = true;
    bool spectrogram = true;
    bool time_integrated = true;
    bool energy_integrated = true;
    bool peak_report = true;
    bool fano_probe = false;
    std::vector<double> correlation_times_ps;

    void validate() const;
};

struct FanoProbeSpec {
    std::vector<double> gamma_s;
    std::vector<double> phi;
    int nu_points = 801;
    double nu_span = 0.0;

    void validate() const;
};

struct ScenarioConfig {
    std::string name;
    SystemParams params;
    Truncation truncation = Truncation::n1;
    FanoOrdering fano_ordering = kDefaultFanoOrdering;
    std::string initial_state = "excited";
    std::vector<double> gamma_s;
    GridSpec grids;
    OutputSpec outputs;
    FanoProbeSpec fano;
    int workers = 1;

    void validate() const;
};

// Diagonal weights encoded in model.initial_state; empty means |e,0><e,0|.
std::vector<double> parse_initial_weights(const std::string& spec);

// Built-in scenario presets.
std::vector<std::string> preset_names();
bool is_preset(const std::string& name);
ScenarioConfig preset_config(const std::string& name);

// Parses a sectioned key = value file; unknown keys are rejected.
ScenarioConfig parse_config(const std::string& text, const std::string& origin);
ScenarioConfig load_config(const std::string& path_or_preset);

// Applies one "section.key=value" override on top of a loaded config.
void apply_override(ScenarioConfig& cfg, const std::string& assignment);

// Echoes a config as text that parses back to the identical config.
std::string emit_config(const ScenarioConfig& cfg);

}  // namespace trps
