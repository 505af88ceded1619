#pragma once

#include <complex>

namespace trps {

using cplx = std::complex<double>;

// Physical parameters of the coupled TLS-cavity emitter. All energies and
// rates in ueV (angular-frequency units), phases in radians.
struct SystemParams {
    double g_mag = 0.0;      // coupling magnitude |g|
    double g_phase = 0.0;    // phase of g
    double kappa = 0.0;      // cavity emission rate
    double gamma = 0.0;      // TLS emission rate
    double gamma_ph = 0.0;   // pure dephasing rate
    double eta = 0.0;        // radiation-pattern overlap, in [0, 1]
    double theta = 0.0;      // interference phase of the cross rate
    double omega_21 = 0.0;   // TLS transition energy
    double omega_c = 0.0;    // cavity mode energy

    // Throws ConfigError if any field is out of range.
    void validate() const;

    cplx g() const { return g_mag * std::exp(cplx(0.0, g_phase)); }

    // Cross emission rate gamma_F = e^{i theta} sqrt(eta gamma kappa).
    cplx gamma_f() const {
        return std::exp(cplx(0.0, theta)) * std::sqrt(eta * gamma * kappa);
    }

    cplx g_plus() const { return g() + cplx(0.0, 0.5) * gamma_f(); }
    cplx g_minus() const { return g() - cplx(0.0, 0.5) * gamma_f(); }

    double gamma_tot() const { return 0.5 * (gamma + kappa) + gamma_ph; }
    double omega_c21() const { return omega_c - omega_21; }
};

// Spectrometer model: single-pole response of width gamma_s (ueV).
struct SpectrometerParams {
    double gamma_s = 0.0;

    void validate() const;
};

}  // namespace trps
