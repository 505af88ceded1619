#include "trps/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "trps/errors.hpp"
#include "trps/io.hpp"

namespace trps {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, const std::string& where) {
    const std::string t = trim(text);
    if (t.empty()) throw ConfigError(where + ": empty number");
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size()) {
        throw ConfigError(where + ": cannot parse number '" + t + "'");
    }
    if (!std::isfinite(v)) throw ConfigError(where + ": number '" + t + "' not finite");
    return v;
}

int parse_int(const std::string& text, const std::string& where) {
    const double v = parse_number(text, where);
    const double r = std::round(v);
    if (std::abs(v - r) > 1e-9 || std::abs(r) > 2e9) {
        throw ConfigError(where + ": expected an integer, got '" + trim(text) + "'");
    }
    return static_cast<int>(r);
}

bool parse_bool(const std::string& text, const std::string& where) {
    const std::string t = trim(text);
    if (t == "true") return true;
    if (t == "false") return false;
    throw ConfigError(where + ": expected true or false, got '" + t + "'");
}

std::vector<double> parse_list(const std::string& text, const std::string& where) {
    std::vector<double> out;
    const std::string t = trim(text);
    if (t.empty()) return out;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(parse_number(item, where));
    }
    return out;
}

std::string canonical_energy_unit(const std::string& text, const std::string& where) {
    if (text == "ueV" || text == "\xc2\xb5"
                         "eV") {
        return "ueV";
    }
    throw ConfigError(where + ": unsupported energy unit '" + text + "' (use ueV)");
}

std::string canonical_time_unit(const std::string& text, const std::string& where) {
    if (text == "ps") return "ps";
    throw ConfigError(where + ": unsupported time unit '" + text + "' (use ps)");
}

std::string join(const std::vector<double>& v) {
    std::string out;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) out += ", ";
        out += format_exact(v[k]);
    }
    return out;
}

void set_value(ScenarioConfig& cfg, const std::string& section, const std::string& key,
               const std::string& value) {
    const std::string where = section + "." + key;
    if (section == "scenario") {
        if (key == "name") {
            cfg.name = trim(value);
            return;
        }
    } else if (section == "system") {
        double* slot = nullptr;
        if (key == "g_mag") slot = &cfg.params.g_mag;
        else if (key == "g_phase") slot = &cfg.params.g_phase;
        else if (key == "kappa") slot = &cfg.params.kappa;
        else if (key == "gamma") slot = &cfg.params.gamma;
        else if (key == "gamma_ph") slot = &cfg.params.gamma_ph;
        else if (key == "eta") slot = &cfg.params.eta;
        else if (key == "theta") slot = &cfg.params.theta;
        else if (key == "omega_21") slot = &cfg.params.omega_21;
        else if (key == "omega_c") slot = &cfg.params.omega_c;
        if (slot) {
            *slot = parse_number(value, where);
            return;
        }
    } else if (section == "model") {
        if (key == "truncation") {
            cfg.truncation = parse_truncation(trim(value));
            return;
        }
        if (key == "fano_ordering") {
            cfg.fano_ordering = parse_fano_ordering(trim(value));
            return;
        }
        if (key == "initial_state") {
            cfg.initial_state = trim(value);
            return;
        }
    } else if (section == "spectrometer") {
        if (key == "gamma_s") {
            cfg.gamma_s = parse_list(value, where);
            return;
        }
    } else if (section == "grids") {
        if (key == "energy_unit") {
            cfg.grids.energy_unit = canonical_energy_unit(trim(value), where);
            return;
        }
        if (key == "time_unit") {
            cfg.grids.time_unit = canonical_time_unit(trim(value), where);
            return;
        }
        if (key == "nu_points") { cfg.grids.nu_points = parse_int(value, where); return; }
        if (key == "nu_span_factor") {
            cfg.grids.nu_span_factor = parse_number(value, where);
            return;
        }
        if (key == "t_outputs") { cfg.grids.t_outputs = parse_int(value, where); return; }
        if (key == "t_max_ps") { cfg.grids.t_max_ps = parse_number(value, where); return; }
        if (key == "fine_step_divisor") {
            cfg.grids.fine_step_divisor = parse_int(value, where);
            return;
        }
        if (key == "tau_step_ps") {
            cfg.grids.tau_step_ps = parse_number(value, where);
            return;
        }
        if (key == "tau_future_ps") {
            cfg.grids.tau_future_ps = parse_number(value, where);
            return;
        }
    } else if (section == "outputs") {
        if (key == "trajectory") { cfg.outputs.trajectory = parse_bool(value, where); return; }
        if (key == "spectrogram") { cfg.outputs.spectrogram = parse_bool(value, where); return; }
        if (key == "time_integrated") {
            cfg.outputs.time_integrated = parse_bool(value, where);
            return;
        }
        if (key == "energy_integrated") {
            cfg.outputs.energy_integrated = parse_bool(value, where);
            return;
        }
        if (key == "peak_report") { cfg.outputs.peak_report = parse_bool(value, where); return; }
        if (key == "fano_probe") { cfg.outputs.fano_probe = parse_bool(value, where); return; }
        if (key == "correlation_times_ps") {
            cfg.outputs.correlation_times_ps = parse_list(value, where);
            return;
        }
    } else if (section == "fano_probe") {
        if (key == "gamma_s") { cfg.fano.gamma_s = parse_list(value, where); return; }
        if (key == "phi") { cfg.fano.phi = parse_list(value, where); return; }
        if (key == "nu_points") { cfg.fano.nu_points = parse_int(value, where); return; }
        if (key == "nu_span") { cfg.fano.nu_span = parse_number(value, where); return; }
    } else if (section == "run") {
        if (key == "workers") { cfg.workers = parse_int(value, where); return; }
    } else {
        throw ConfigError("unknown section [" + section + "]");
    }
    throw ConfigError("unknown key '" + key + "' in section [" + section + "]");
}

}  // namespace

std::vector<double> parse_initial_weights(const std::string& spec) {
    if (trim(spec) == "excited") return {};
    const std::vector<double> w = parse_list(spec, "model.initial_state");
    if (w.empty()) {
        throw ConfigError("model.initial_state must be 'excited' or a list of diagonal weights");
    }
    double sum = 0.0;
    for (double v : w) {
        if (v < 0.0) throw ConfigError("model.initial_state weights must be non-negative");
        sum += v;
    }
    if (!(sum > 0.0)) throw ConfigError("model.initial_state weights must not all vanish");
    return w;
}

void GridSpec::validate() const {
    if (energy_unit != "ueV") throw ConfigError("grids.energy_unit must be ueV");
    if (time_unit != "ps") throw ConfigError("grids.time_unit must be ps");
    if (nu_points < 3) throw ConfigError("grids.nu_points must be at least 3");
    if (!(nu_span_factor > 0.0)) throw ConfigError("grids.nu_span_factor must be positive");
    if (t_outputs < 2) throw ConfigError("grids.t_outputs must be at least 2");
    if (t_max_ps < 0.0) throw ConfigError("grids.t_max_ps must be non-negative");
    if (fine_step_divisor < 1) throw ConfigError("grids.fine_step_divisor must be at least 1");
    if (tau_step_ps < 0.0) throw ConfigError("grids.tau_step_ps must be non-negative");
    if (tau_future_ps < 0.0) throw ConfigError("grids.tau_future_ps must be non-negative");
}

void OutputSpec::validate() const {
    for (double t : correlation_times_ps) {
        if (!(t >= 0.0)) {
            throw ConfigError("outputs.correlation_times_ps entries must be non-negative");
        }
    }
}

void FanoProbeSpec::validate() const {
    if (gamma_s.empty()) throw ConfigError("fano_probe.gamma_s must not be empty");
    for (double g : gamma_s) {
        if (!(g > 0.0)) throw ConfigError("fano_probe.gamma_s entries must be positive");
    }
    if (phi.empty()) throw ConfigError("fano_probe.phi must not be empty");
    if (nu_points < 3) throw ConfigError("fano_probe.nu_points must be at least 3");
    if (nu_span < 0.0) throw ConfigError("fano_probe.nu_span must be non-negative");
}

void ScenarioConfig::validate() const {
    if (name.empty()) throw ConfigError("scenario.name is required");
    for (char c : name) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) {
            throw ConfigError("scenario.name may contain only letters, digits, '_' and '-'");
        }
    }
    params.validate();
    const std::vector<double> weights = parse_initial_weights(initial_state);
    if (!weights.empty() && static_cast<int>(weights.size()) != basis_dim(truncation)) {
        throw ConfigError("model.initial_state needs " + std::to_string(basis_dim(truncation)) +
                          " weights for truncation " + truncation_label(truncation) + ", got " +
                          std::to_string(weights.size()));
    }
    grids.validate();
    outputs.validate();
    const bool spectral = outputs.spectrogram || outputs.time_integrated ||
                          outputs.energy_integrated || outputs.peak_report;
    if (spectral || outputs.trajectory || !outputs.correlation_times_ps.empty()) {
        if (gamma_s.empty()) {
            throw ConfigError("spectrometer.gamma_s must not be empty for spectral products");
        }
        for (double g : gamma_s) {
            if (!(g > 0.0)) {
                throw ConfigError("spectrometer.gamma_s entries must be positive");
            }
        }
    }
    if (outputs.fano_probe) fano.validate();
    if (workers < 1) throw ConfigError("run.workers must be at least 1");
}

std::vector<std::string> preset_names() {
    return {"fig1_res5",  "fig1_res150", "fig1_res500", "fig2_correlations",
            "fig3_fano",  "figS4_tls",   "figS5_fphi"};
}

bool is_preset(const std::string& name) {
    const auto names = preset_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

namespace {

SystemParams resonant_strong_coupling() {
    SystemParams p;
    p.g_mag = 100.0;
    p.g_phase = M_PI / 2.0;
    p.kappa = 50.0;
    p.gamma = 0.05;
    p.gamma_ph = 0.0;
    p.eta = 0.0;
    p.theta = M_PI / 2.0;
    p.omega_21 = 0.0;
    p.omega_c = 0.0;
    return p;
}

}  // namespace

ScenarioConfig preset_config(const std::string& name) {
    ScenarioConfig cfg;
    cfg.name = name;
    if (name == "fig1_res5" || name == "fig1_res150" || name == "fig1_res500") {
        cfg.params = resonant_strong_coupling();
        cfg.gamma_s = {name == "fig1_res5" ? 5.0 : name == "fig1_res150" ? 150.0 : 500.0};
        return cfg;
    }
    if (name == "fig2_correlations") {
        cfg.params = resonant_strong_coupling();
        cfg.gamma_s = {5.0};
        cfg.outputs.correlation_times_ps = {4.794, 9.588, 47.940, 95.880};
        return cfg;
    }
    if (name == "fig3_fano") {
        cfg.params.g_mag = 1.0;
        cfg.params.g_phase = M_PI / 2.0;
        cfg.params.kappa = 50.0;
        cfg.params.gamma = 0.05;
        cfg.params.gamma_ph = 30.0;
        cfg.params.eta = 1.0;
        cfg.params.theta = M_PI / 2.0;
        cfg.params.omega_21 = 0.0;
        cfg.params.omega_c = 70.0;
        cfg.gamma_s = {5.0, 50.0, 500.0};
        cfg.grids.fine_step_divisor = 1;
        return cfg;
    }
    if (name == "figS4_tls") {
        cfg.params.g_mag = 0.0;
        cfg.params.g_phase = M_PI / 2.0;
        cfg.params.kappa = 10.0;
        cfg.params.gamma = 50.0;
        cfg.params.gamma_ph = 0.0;
        cfg.params.eta = 0.0;
        cfg.params.theta = M_PI / 2.0;
        cfg.params.omega_21 = 0.0;
        cfg.params.omega_c = 0.0;
        cfg.gamma_s = {5.0, 50.0, 500.0};
        return cfg;
    }
    if (name == "figS5_fphi") {
        cfg.params = resonant_strong_coupling();
        cfg.gamma_s = {150.0};
        cfg.outputs.trajectory = false;
        cfg.outputs.spectrogram = false;
        cfg.outputs.time_integrated = false;
        cfg.outputs.energy_integrated = false;
        cfg.outputs.peak_report = false;
        cfg.outputs.fano_probe = true;
        cfg.fano.gamma_s = {5.0, 150.0, 500.0};
        cfg.fano.phi = {0.0, -M_PI / 8.0, -M_PI / 4.0, -3.0 * M_PI / 8.0, -M_PI / 2.0};
        cfg.fano.nu_points = 4001;
        cfg.fano.nu_span = 400.0;
        return cfg;
    }
    throw ConfigError("unknown preset '" + name + "'");
}

ScenarioConfig parse_config(const std::string& text, const std::string& origin) {
    ScenarioConfig cfg;
    std::istringstream is(text);
    std::string line;
    std::string section;
    int lineno = 0;
    bool named = false;
    while (std::getline(is, line)) {
        ++lineno;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        std::ostringstream at;
        at << origin << ":" << lineno;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(at.str() + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) throw ConfigError(at.str() + ": empty section name");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(at.str() + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = line.substr(eq + 1);
        if (key.empty()) throw ConfigError(at.str() + ": empty key");
        if (section.empty()) {
            throw ConfigError(at.str() + ": key '" + key + "' outside any section");
        }
        try {
            set_value(cfg, section, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError(at.str() + ": " + e.what());
        }
        if (section == "scenario" && key == "name") named = true;
    }
    if (!named) throw ConfigError(origin + ": scenario.name is required");
    return cfg;
}

ScenarioConfig load_config(const std::string& path_or_preset) {
    if (is_preset(path_or_preset)) return preset_config(path_or_preset);
    return parse_config(read_file(path_or_preset), path_or_preset);
}

void apply_override(ScenarioConfig& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) {
        throw ConfigError("override '" + assignment + "' must look like section.key=value");
    }
    const std::string path = trim(assignment.substr(0, eq));
    const std::string value = assignment.substr(eq + 1);
    const auto dot = path.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 >= path.size()) {
        throw ConfigError("override '" + assignment + "' must look like section.key=value");
    }
    set_value(cfg, path.substr(0, dot), path.substr(dot + 1), value);
}

std::string emit_config(const ScenarioConfig& cfg) {
    std::ostringstream os;
    os << "[scenario]\n";
    os << "name = " << cfg.name << "\n\n";
    os << "[system]\n";
    os << "g_mag = " << format_exact(cfg.params.g_mag) << '\n';
    os << "g_phase = " << format_exact(cfg.params.g_phase) << '\n';
    os << "kappa = " << format_exact(cfg.params.kappa) << '\n';
    os << "gamma = " << format_exact(cfg.params.gamma) << '\n';
    os << "gamma_ph = " << format_exact(cfg.params.gamma_ph) << '\n';
    os << "eta = " << format_exact(cfg.params.eta) << '\n';
    os << "theta = " << format_exact(cfg.params.theta) << '\n';
    os << "omega_21 = " << format_exact(cfg.params.omega_21) << '\n';
    os << "omega_c = " << format_exact(cfg.params.omega_c) << "\n\n";
    os << "[model]\n";
    os << "truncation = " << truncation_label(cfg.truncation) << '\n';
    os << "fano_ordering = " << fano_ordering_label(cfg.fano_ordering) << '\n';
    const std::vector<double> weights = parse_initial_weights(cfg.initial_state);
    os << "initial_state = " << (weights.empty() ? "excited" : join(weights)) << "\n\n";
    os << "[spectrometer]\n";
    os << "gamma_s = " << join(cfg.gamma_s) << "\n\n";
    os << "[grids]\n";
    os << "energy_unit = " << cfg.grids.energy_unit << '\n';
    os << "time_unit = " << cfg.grids.time_unit << '\n';
    os << "nu_points = " << cfg.grids.nu_points << '\n';
    os << "nu_span_factor = " << format_exact(cfg.grids.nu_span_factor) << '\n';
    os << "t_outputs = " << cfg.grids.t_outputs << '\n';
    os << "t_max_ps = " << format_exact(cfg.grids.t_max_ps) << '\n';
    os << "fine_step_divisor = " << cfg.grids.fine_step_divisor << '\n';
    os << "tau_step_ps = " << format_exact(cfg.grids.tau_step_ps) << '\n';
    os << "tau_future_ps = " << format_exact(cfg.grids.tau_future_ps) << "\n\n";
    os << "[outputs]\n";
    os << "trajectory = " << (cfg.outputs.trajectory ? "true" : "false") << '\n';
    os << "spectrogram = " << (cfg.outputs.spectrogram ? "true" : "false") << '\n';
    os << "time_integrated = " << (cfg.outputs.time_integrated ? "true" : "false") << '\n';
    os << "energy_integrated = " << (cfg.outputs.energy_integrated ? "true" : "false")
       << '\n';
    os << "peak_report = " << (cfg.outputs.peak_report ? "true" : "false") << '\n';
    os << "fano_probe = " << (cfg.outputs.fano_probe ? "true" : "false") << '\n';
    os << "correlation_times_ps = " << join(cfg.outputs.correlation_times_ps) << "\n\n";
    os << "[fano_probe]\n";
    os << "gamma_s = " << join(cfg.fano.gamma_s) << '\n';
    os << "phi = " << join(cfg.fano.phi) << '\n';
    os << "nu_points = " << cfg.fano.nu_points << '\n';
    os << "nu_span = " << format_exact(cfg.fano.nu_span) << "\n\n";
    os << "[run]\n";
    os << "workers = " << cfg.workers << '\n';
    return os.str();
}

}  // namespace trps
