#include "trps/system_params.hpp"

#include <cmath>
#include <sstream>

#include "trps/errors.hpp"

namespace trps {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
}

std::string range_msg(const std::string& key, double value, const std::string& range) {
    std::ostringstream os;
    os << "parameter " << key << " = " << value << " outside accepted range " << range;
    return os.str();
}

}  // namespace

void SystemParams::validate() const {
    require(std::isfinite(g_mag) && g_mag >= 0.0, range_msg("system.g_mag", g_mag, "[0, inf)"));
    require(std::isfinite(g_phase), "parameter system.g_phase must be finite");
    require(std::isfinite(kappa) && kappa >= 0.0, range_msg("system.kappa", kappa, "[0, inf)"));
    require(std::isfinite(gamma) && gamma >= 0.0, range_msg("system.gamma", gamma, "[0, inf)"));
    require(std::isfinite(gamma_ph) && gamma_ph >= 0.0,
            range_msg("system.gamma_ph", gamma_ph, "[0, inf)"));
    require(std::isfinite(eta) && eta >= 0.0 && eta <= 1.0,
            range_msg("system.eta", eta, "[0, 1]"));
    require(std::isfinite(theta), "parameter system.theta must be finite");
    require(std::isfinite(omega_21), "parameter system.omega_21 must be finite");
    require(std::isfinite(omega_c), "parameter system.omega_c must be finite");
    require(gamma + kappa + g_mag > 0.0,
            "system must have at least one nonzero rate or coupling");
}

void SpectrometerParams::validate() const {
    require(std::isfinite(gamma_s) && gamma_s > 0.0,
            range_msg("spectrometer.gamma_s", gamma_s, "(0, inf)"));
}

}  // namespace trps
